//! Exact construction of finite-type simple Lie algebras and their
//! two-Cartan deformations `d = n- + k + h + n+`, together with exhaustive
//! verifiers for the Lie axioms, invariant forms, and ideal structure.
//!
//! All computations are generic over a [`Scalar`] field. The aliases at the
//! crate root fix the field to arbitrary-precision rationals, which is what
//! the command-line tool and the acceptance suite use.

#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod chevalley;
pub mod deformed;
pub mod exactla;
pub mod pipeline;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod structure;
pub mod table;

pub use cartan::catalog;
pub use cartan::{CartanError, CartanMatrix, Symmetrizer};
pub use chevalley::{ChevalleyAlgebra, ChevalleyError, GBasisIndex};
pub use deformed::{DBasisIndex, DeformError, DeformedAlgebra, SkewMatrix};
pub use exactla::{LinalgError, Matrix};
pub use report::CheckReport;
pub use roots::{Root, RootError, RootSystem};
pub use scalar::Scalar;
pub use structure::{StructureError, Subspace};
pub use table::{BracketTable, SparseVec};

/// Exact rational scalar; numerator and denominator are big integers kept in
/// lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
pub type RatMatrix = Matrix<Rational>;
pub type WeightVector = cartan::WeightVector<Rational>;
pub type CartanElement = cartan::CartanElement<Rational>;
pub type GElement = SparseVec<Rational>;
pub type DElement = SparseVec<Rational>;
pub type GAlgebra = ChevalleyAlgebra<Rational>;
pub type DAlgebra = DeformedAlgebra<Rational>;
pub type UMatrix = SkewMatrix<Rational>;
pub type RatSubspace = Subspace<Rational>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}
