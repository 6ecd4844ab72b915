//! The deformed algebra `d = n- + k + h + n+` attached to a Cartan matrix
//! and a skew-symmetric matrix `u`.
//!
//! With `lambda_i = alpha_i / d_i` (so `h_{lambda_i} = h_i`), the brackets are
//!
//! ```text
//! [h_i, x_a] = ((lambda_i|a) - u(lambda_i, a)) x_a
//! [k_i, x_a] = ((lambda_i|a) + u(lambda_i, a)) x_a
//! [x_a, x_b] = [x_a, x_b]_g                         (a + b != 0)
//! [x_a, x_-a] = (x_a|x_-a)/2 (h_a + k_a)
//! ```
//!
//! and `h`, `k` commute with each other and themselves. `k_i` is the image
//! of `h_i` under the fixed identification `h -> k`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cartan::{CartanElement, CartanMatrix, WeightVector};
use crate::chevalley::{parse_indexed_label, parse_root_label, ChevalleyAlgebra, GBasisIndex};
use crate::exactla::{determinant, solve_linear, Matrix};
use crate::report::CheckReport;
use crate::roots::{Root, RootSystem};
use crate::scalar::{parse_scalar, Scalar};
use crate::table::{BracketTable, SparseVec, TableExport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error("u is not skew-symmetric: {0}")]
    NotSkew(String),
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("g table was built from a different Cartan matrix")]
    IncompatibleInputs,
    #[error("malformed input: {0}")]
    Parse(String),
}

/// A skew-symmetric square matrix `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> SkewMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self, DeformError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(DeformError::NotSkew(format!(
                    "row {} has length {}, expected {n}",
                    i + 1,
                    r.len()
                )));
            }
        }
        for i in 0..n {
            for j in i..n {
                if rows[i][j] != -rows[j][i].clone() {
                    return Err(DeformError::NotSkew(format!(
                        "u[{}][{}] = {} but u[{}][{}] = {}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        j + 1,
                        i + 1,
                        rows[j][i]
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            rows: vec![vec![T::zero(); n]; n],
        }
    }

    /// Seeded random `u`: each upper-triangle entry, in row-major order, is
    /// `s/t` with `s` in `[-9, 9] \ {0}` and `t` in `[1, 9]`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let mut s = rng.gen_range(-9i64..=8);
                if s >= 0 {
                    s += 1;
                }
                let t = rng.gen_range(1i64..=9);
                rows[i][j] = T::ratio(s, t);
                rows[j][i] = -rows[i][j].clone();
            }
        }
        Self { rows }
    }

    /// Parses a grid of `"p/q"` strings.
    pub fn from_strings(grid: &[Vec<String>]) -> Result<Self, DeformError> {
        let rows = grid
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        parse_scalar::<T>(s)
                            .ok_or_else(|| DeformError::Parse(format!("bad rational {s:?}")))
                    })
                    .collect::<Result<Vec<T>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }
}

/// Wire form `{"u": [["0","1"],["-1","0"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UInput {
    pub u: Vec<Vec<String>>,
}

fn check_rank(c: &CartanMatrix, found: usize) -> Result<(), DeformError> {
    if c.rank() != found {
        return Err(DeformError::RankMismatch {
            expected: c.rank(),
            found,
        });
    }
    Ok(())
}

/// `u(lambda, mu) = sum_ij u_ij lambda(h_i) mu(h_j)`.
pub fn u_form<T: Scalar>(
    c: &CartanMatrix,
    u: &SkewMatrix<T>,
    lambda: &WeightVector<T>,
    mu: &WeightVector<T>,
) -> Result<T, DeformError> {
    check_rank(c, u.len())?;
    check_rank(c, lambda.len())?;
    check_rank(c, mu.len())?;
    let l = c.coroot_values(lambda).expect("rank checked");
    let m = c.coroot_values(mu).expect("rank checked");
    let mut acc = T::zero();
    for (i, li) in l.iter().enumerate() {
        if li.is_zero() {
            continue;
        }
        for (j, mj) in m.iter().enumerate() {
            let uij = u.get(i, j);
            if !uij.is_zero() && !mj.is_zero() {
                acc = acc + uij.clone() * li.clone() * mj.clone();
            }
        }
    }
    Ok(acc)
}

/// The weight `Phi(lambda)` with `(Phi(lambda)|mu) = u(lambda, mu)` for all `mu`.
pub fn phi<T: Scalar>(
    c: &CartanMatrix,
    u: &SkewMatrix<T>,
    lambda: &WeightVector<T>,
) -> Result<WeightVector<T>, DeformError> {
    let n = c.rank();
    let rhs = (0..n)
        .map(|j| u_form(c, u, lambda, &WeightVector::simple_root(n, j)))
        .collect::<Result<Vec<T>, _>>()?;
    let coords = solve_linear(&c.symmetrized_matrix::<T>(), &rhs)
        .expect("symmetrized finite-type Cartan matrix is invertible");
    Ok(WeightVector(coords))
}

/// `Phi_+(lambda) = Phi(lambda) + lambda`.
pub fn phi_plus<T: Scalar>(
    c: &CartanMatrix,
    u: &SkewMatrix<T>,
    lambda: &WeightVector<T>,
) -> Result<WeightVector<T>, DeformError> {
    Ok(phi(c, u, lambda)?.add(lambda))
}

/// `Phi_-(lambda) = Phi(lambda) - lambda`.
pub fn phi_minus<T: Scalar>(
    c: &CartanMatrix,
    u: &SkewMatrix<T>,
    lambda: &WeightVector<T>,
) -> Result<WeightVector<T>, DeformError> {
    Ok(phi(c, u, lambda)?.sub(lambda))
}

/// Basis label of `d`. `H` and `K` indices are zero-based, displayed one-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DBasisIndex {
    E(Root),
    K(usize),
    H(usize),
}

impl fmt::Display for DBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DBasisIndex::E(r) => write!(f, "E{r}"),
            DBasisIndex::K(i) => write!(f, "K{}", i + 1),
            DBasisIndex::H(i) => write!(f, "H{}", i + 1),
        }
    }
}

impl FromStr for DBasisIndex {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(r) = parse_root_label(s) {
            return Ok(DBasisIndex::E(r));
        }
        parse_indexed_label(s, 'H')
            .map(DBasisIndex::H)
            .or_else(|| parse_indexed_label(s, 'K').map(DBasisIndex::K))
            .ok_or_else(|| format!("bad d basis label {s:?}"))
    }
}

/// Basis order of `d`: negative roots, `k_1..k_n`, `h_1..h_n`, positive roots.
pub fn d_basis(rs: &RootSystem) -> Vec<DBasisIndex> {
    let n = rs.rank();
    rs.negative()
        .cloned()
        .map(DBasisIndex::E)
        .chain((0..n).map(DBasisIndex::K))
        .chain((0..n).map(DBasisIndex::H))
        .chain(rs.positive().cloned().map(DBasisIndex::E))
        .collect()
}

/// `d` as an explicit bracket table with the form `(.|.)_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedAlgebra<T> {
    roots: RootSystem,
    u: SkewMatrix<T>,
    table: BracketTable<DBasisIndex, T>,
    gram: Matrix<T>,
    gram_det: T,
}

/// Builds `d` from `(C, u)` and the `g` table of the same `C`.
pub fn build_d<T: Scalar>(
    c: &CartanMatrix,
    u: &SkewMatrix<T>,
    g: &ChevalleyAlgebra<T>,
) -> Result<DeformedAlgebra<T>, DeformError> {
    if g.cartan() != c {
        return Err(DeformError::IncompatibleInputs);
    }
    DeformedAlgebra::build(g, u)
}

impl<T: Scalar> DeformedAlgebra<T> {
    pub fn build(g: &ChevalleyAlgebra<T>, u: &SkewMatrix<T>) -> Result<Self, DeformError> {
        let c = g.cartan();
        check_rank(c, u.len())?;
        let rs = g.roots().clone();
        let n = rs.rank();
        let basis = d_basis(&rs);
        let mut table = BracketTable::new(basis);
        let neg = rs.negative().count();
        let k_pos = |i: usize| neg + i;
        let h_pos = |i: usize| neg + n + i;
        // g positions: negatives, H, positives
        let from_g = |p: usize| match g.table().label(p) {
            GBasisIndex::E(_) if p < neg => p,
            GBasisIndex::E(_) => p + n,
            GBasisIndex::H(i) => h_pos(*i),
        };
        let lambdas: Vec<WeightVector<T>> = (0..n).map(|i| c.coroot_weight(i)).collect();
        for r in rs.roots() {
            let e = table
                .position(&DBasisIndex::E(r.clone()))
                .expect("root in basis");
            let alpha = WeightVector::<T>::from_ints(r.coords());
            for (i, lam) in lambdas.iter().enumerate() {
                let pair = c.weight_form(lam, &alpha).expect("rank checked");
                let twist = u_form(c, u, lam, &alpha)?;
                let hc = pair.clone() - twist.clone();
                let kc = pair + twist;
                table.set(h_pos(i), e, SparseVec::from_pairs([(e, hc)]));
                table.set(k_pos(i), e, SparseVec::from_pairs([(e, kc)]));
            }
        }
        for (i, j, v) in g.table().entries() {
            let (GBasisIndex::E(_), GBasisIndex::E(_)) = (g.table().label(i), g.table().label(j))
            else {
                continue;
            };
            let mut pairs = Vec::new();
            for (p, coef) in v.iter() {
                match g.table().label(*p) {
                    GBasisIndex::H(m) => {
                        let half = coef.clone() * T::half();
                        pairs.push((h_pos(*m), half.clone()));
                        pairs.push((k_pos(*m), half));
                    }
                    GBasisIndex::E(_) => pairs.push((from_g(*p), coef.clone())),
                }
            }
            table.set(from_g(i), from_g(j), SparseVec::from_pairs(pairs));
        }
        let gram = Self::form_gram(g, u, &table)?;
        let gram_det = determinant(&gram);
        Ok(Self {
            roots: rs,
            u: u.clone(),
            table,
            gram,
            gram_det,
        })
    }

    fn form_gram(
        g: &ChevalleyAlgebra<T>,
        u: &SkewMatrix<T>,
        table: &BracketTable<DBasisIndex, T>,
    ) -> Result<Matrix<T>, DeformError> {
        let c = g.cartan();
        let n = c.rank();
        let d = c.symmetrizer();
        let mut hk = vec![vec![T::zero(); n]; n];
        for (i, row) in hk.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = -T::two() * u_form(c, u, &c.coroot_weight(i), &c.coroot_weight(j))?;
            }
        }
        let dim = table.dim();
        Ok(Matrix::from_fn(dim, dim, |a, b| {
            match (table.label(a), table.label(b)) {
                (DBasisIndex::H(i), DBasisIndex::H(j)) | (DBasisIndex::K(i), DBasisIndex::K(j)) => {
                    T::ratio(2 * c.entry(*i, *j), d.get(*j))
                }
                (DBasisIndex::H(i), DBasisIndex::K(j)) | (DBasisIndex::K(j), DBasisIndex::H(i)) => {
                    hk[*i][*j].clone()
                }
                (DBasisIndex::E(r), DBasisIndex::E(s)) => {
                    let gx = g.root_position(r.coords()).expect("root");
                    let gy = g.root_position(s.coords()).expect("root");
                    g.gram()[(gx, gy)].clone()
                }
                _ => T::zero(),
            }
        }))
    }

    /// Assembles an algebra without any checks; the determinant is recomputed.
    pub fn from_parts(
        roots: RootSystem,
        u: SkewMatrix<T>,
        table: BracketTable<DBasisIndex, T>,
        gram: Matrix<T>,
    ) -> Self {
        let gram_det = determinant(&gram);
        Self {
            roots,
            u,
            table,
            gram,
            gram_det,
        }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        self.roots.cartan()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn u(&self) -> &SkewMatrix<T> {
        &self.u
    }

    pub fn table(&self) -> &BracketTable<DBasisIndex, T> {
        &self.table
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    /// Determinant of the Gram matrix; reported, never required nonzero.
    pub fn gram_det(&self) -> &T {
        &self.gram_det
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn root_position(&self, coords: &[i64]) -> Option<usize> {
        self.table
            .position(&DBasisIndex::E(Root::new(coords.to_vec())?))
    }

    pub fn h_position(&self, i: usize) -> usize {
        self.table
            .position(&DBasisIndex::H(i))
            .expect("H index in range")
    }

    pub fn k_position(&self, i: usize) -> usize {
        self.table
            .position(&DBasisIndex::K(i))
            .expect("K index in range")
    }

    pub fn e(&self, coords: &[i64]) -> SparseVec<T> {
        SparseVec::unit(self.root_position(coords).expect("not a root"))
    }

    pub fn h(&self, i: usize) -> SparseVec<T> {
        SparseVec::unit(self.h_position(i))
    }

    pub fn k(&self, i: usize) -> SparseVec<T> {
        SparseVec::unit(self.k_position(i))
    }

    /// `h_lambda` inside the `h` copy.
    pub fn h_lambda(&self, lambda: &WeightVector<T>) -> SparseVec<T> {
        let t: CartanElement<T> = self.cartan().nu_inverse(lambda);
        SparseVec::from_pairs(
            t.coords()
                .iter()
                .enumerate()
                .map(|(j, c)| (self.h_position(j), c.clone())),
        )
    }

    /// `k_lambda`, the image of `h_lambda` in the `k` copy.
    pub fn k_lambda(&self, lambda: &WeightVector<T>) -> SparseVec<T> {
        let t: CartanElement<T> = self.cartan().nu_inverse(lambda);
        SparseVec::from_pairs(
            t.coords()
                .iter()
                .enumerate()
                .map(|(j, c)| (self.k_position(j), c.clone())),
        )
    }

    pub fn bracket(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> SparseVec<T> {
        self.table.bracket(x, y)
    }

    pub fn form_d(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> T {
        self.table.form(&self.gram, x, y)
    }

    pub fn u_form(&self, lambda: &WeightVector<T>, mu: &WeightVector<T>) -> T {
        u_form(self.cartan(), &self.u, lambda, mu).expect("ranks agree")
    }

    pub fn verify_jacobi(&self) -> CheckReport {
        self.table.verify_jacobi(true)
    }

    pub fn verify_invariance(&self) -> CheckReport {
        self.table.verify_invariance(&self.gram)
    }

    /// `[h_l - k_l, x_a] = -2u(l, a) x_a` and `[h_l + k_l, x_a] = 2(l|a) x_a`
    /// for every root `a` and simple root `l`.
    pub fn verify_reduction_identities(&self) -> CheckReport {
        let mut rep = CheckReport::new("reduction_identities");
        let n = self.rank();
        let c = self.cartan();
        for i in 0..n {
            let lam = WeightVector::<T>::simple_root(n, i);
            let h = self.h_lambda(&lam);
            let k = self.k_lambda(&lam);
            let diff = h.sub(&k);
            let sum = h.add(&k);
            for r in self.roots.roots() {
                let alpha = WeightVector::<T>::from_ints(r.coords());
                let x = self.e(r.coords());
                let minus = self.bracket(&diff, &x);
                let want = x.scale(&(-T::two() * self.u_form(&lam, &alpha)));
                rep.record(minus == want, || {
                    format!(
                        "[h-k, x] for lambda = a{}, alpha = {r}: got {}, want {}",
                        i + 1,
                        self.table.format_element(&minus),
                        self.table.format_element(&want)
                    )
                });
                let plus = self.bracket(&sum, &x);
                let want = x.scale(&(T::two() * c.weight_form(&lam, &alpha).expect("rank")));
                rep.record(plus == want, || {
                    format!(
                        "[h+k, x] for lambda = a{}, alpha = {r}: got {}, want {}",
                        i + 1,
                        self.table.format_element(&plus),
                        self.table.format_element(&want)
                    )
                });
            }
        }
        rep
    }

    /// At `u = 0`, `[h_i, y] = [k_i, y]` for every basis element `y`.
    pub fn verify_u0_reduction(&self) -> CheckReport {
        let mut rep = CheckReport::new("u0_reduction");
        for i in 0..self.rank() {
            for y in 0..self.dim() {
                let yv = SparseVec::unit(y);
                let a = self.bracket(&self.h(i), &yv);
                let b = self.bracket(&self.k(i), &yv);
                rep.record(a == b, || {
                    format!("[H{0}, {1}] != [K{0}, {1}]", i + 1, self.table.label(y))
                });
            }
        }
        rep
    }

    pub fn export(&self) -> DExport {
        DExport {
            cartan: self.cartan().entries().to_vec(),
            u: self.u.to_strings(),
            table: self.table.export(&self.gram),
            gram_det: self.gram_det.to_string(),
        }
    }

    /// Reconstructs an algebra from its export. The table is taken as given;
    /// only the basis is checked against the Cartan matrix.
    pub fn import(export: &DExport) -> Result<Self, DeformError> {
        let cartan = CartanMatrix::validate(export.cartan.clone())
            .map_err(|e| DeformError::Parse(e.to_string()))?;
        let u = SkewMatrix::from_strings(&export.u)?;
        check_rank(&cartan, u.len())?;
        let roots = RootSystem::generate(&cartan);
        let (table, gram) = BracketTable::import(&export.table).map_err(DeformError::Parse)?;
        if table.basis() != d_basis(&roots).as_slice() {
            return Err(DeformError::Parse(
                "basis does not match the Cartan matrix".into(),
            ));
        }
        Ok(Self::from_parts(roots, u, table, gram))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DExport {
    pub cartan: Vec<Vec<i64>>,
    pub u: Vec<Vec<String>>,
    #[serde(flatten)]
    pub table: TableExport,
    pub gram_det: String,
}
