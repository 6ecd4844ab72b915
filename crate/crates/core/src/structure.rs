//! Subspaces of a bracket table and the ideal structure of `d`.
//!
//! `l` is spanned by `h_lambda - k_lambda` for `lambda` in the radical of
//! `u`; `m` by all root vectors and `h_i + k_i`. The solvable radical is
//! computed independently as the Killing-orthogonal of the derived algebra.

use std::fmt::Display;
use std::hash::Hash;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::cartan::{CartanMatrix, WeightVector};
use crate::chevalley::ChevalleyAlgebra;
use crate::deformed::{u_form, DBasisIndex, DeformedAlgebra, SkewMatrix};
use crate::exactla::{nullspace, rref_rows, Matrix};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::table::{BracketTable, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("d and g were built from different Cartan matrices")]
    IncompatibleInputs,
}

/// A subspace of `T^dim` in reduced row echelon form, so equal subspaces
/// have equal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<T> {
    ambient: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> Subspace<T> {
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<T>>) -> Self {
        assert!(
            vectors.iter().all(|v| v.len() == ambient),
            "vector length differs from ambient dimension"
        );
        let (mut rows, pivots) = rref_rows(vectors, ambient);
        rows.truncate(pivots.len());
        Self {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn from_sparse(ambient: usize, vectors: &[SparseVec<T>]) -> Self {
        Self::from_spanning(
            ambient,
            vectors.iter().map(|v| v.to_dense(ambient)).collect(),
        )
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::from_spanning(
            ambient,
            (0..ambient)
                .map(|i| {
                    (0..ambient)
                        .map(|j| if i == j { T::one() } else { T::zero() })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Pivot-normalized basis.
    pub fn basis(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn sparse_basis(&self) -> Vec<SparseVec<T>> {
        self.rows.iter().map(|r| SparseVec::from_dense(r)).collect()
    }

    /// Remainder of `v` after reduction by the pivot rows.
    fn reduce(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_sparse(&self, v: &SparseVec<T>) -> bool {
        v.is_zero() || self.contains(&v.to_dense(self.ambient))
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::from_spanning(
            self.ambient,
            self.rows.iter().chain(&other.rows).cloned().collect(),
        )
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let a = self.dim();
        if a == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        // columns are the basis vectors of both; a kernel vector (x, y) gives
        // sum x_i s_i = -sum y_j o_j in the intersection
        let cols: Vec<&Vec<T>> = self.rows.iter().chain(&other.rows).collect();
        let m = Matrix::from_fn(self.ambient, cols.len(), |i, j| cols[j][i].clone());
        let vectors = nullspace(&m)
            .into_iter()
            .map(|k| {
                let mut v = vec![T::zero(); self.ambient];
                for (c, row) in k[..a].iter().zip(&self.rows) {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = x.clone() + c.clone() * r.clone();
                    }
                }
                v
            })
            .collect();
        Self::from_spanning(self.ambient, vectors)
    }
}

/// Basis of `{lambda : u(lambda, .) = 0}` in simple-root coordinates.
pub fn rad_u<T: Scalar>(c: &CartanMatrix, u: &SkewMatrix<T>) -> Vec<WeightVector<T>> {
    let n = c.rank();
    let m = Matrix::from_fn(n, n, |i, j| {
        u_form(
            c,
            u,
            &WeightVector::simple_root(n, i),
            &WeightVector::simple_root(n, j),
        )
        .expect("ranks agree")
    });
    nullspace(&m.transpose())
        .into_iter()
        .map(WeightVector)
        .collect()
}

/// `l = span{h_lambda - k_lambda : lambda in rad(u)}`.
pub fn build_ideal_l<T: Scalar>(d: &DeformedAlgebra<T>) -> Subspace<T> {
    let vectors: Vec<SparseVec<T>> = rad_u(d.cartan(), d.u())
        .iter()
        .map(|lam| d.h_lambda(lam).sub(&d.k_lambda(lam)))
        .collect();
    Subspace::from_sparse(d.dim(), &vectors)
}

/// `m = span{x_alpha, h_i + k_i}`.
pub fn build_ideal_m<T: Scalar>(d: &DeformedAlgebra<T>) -> Subspace<T> {
    let mut vectors: Vec<SparseVec<T>> =
        d.roots().roots().iter().map(|r| d.e(r.coords())).collect();
    vectors.extend((0..d.rank()).map(|i| d.h(i).add(&d.k(i))));
    Subspace::from_sparse(d.dim(), &vectors)
}

/// Counts `[b, s] in S` over basis elements `b` and basis vectors `s` of `S`.
pub fn ideal_report<B, T>(table: &BracketTable<B, T>, s: &Subspace<T>, name: &str) -> CheckReport
where
    B: Clone + Eq + Hash + Display + Send + Sync,
    T: Scalar,
{
    let basis = s.sparse_basis();
    let partial: Vec<CheckReport> = (0..table.dim())
        .into_par_iter()
        .map(|b| {
            let mut rep = CheckReport::new(name);
            for (k, v) in basis.iter().enumerate() {
                let w = table.bracket_with_basis(b, v);
                rep.record(s.contains_sparse(&w), || {
                    format!(
                        "[{}, basis vector {}] = {} leaves the subspace",
                        table.label(b),
                        k + 1,
                        table.format_element(&w)
                    )
                });
            }
            rep
        })
        .collect();
    let mut out = CheckReport::new(name);
    partial.into_iter().for_each(|r| out.merge(r));
    out
}

pub fn is_ideal<B, T>(table: &BracketTable<B, T>, s: &Subspace<T>) -> bool
where
    B: Clone + Eq + Hash + Display + Send + Sync,
    T: Scalar,
{
    ideal_report(table, s, "ideal").passed()
}

/// `[S1, S2]`, spanned by brackets of basis vectors.
pub fn bracket_span<B, T>(
    table: &BracketTable<B, T>,
    a: &Subspace<T>,
    b: &Subspace<T>,
) -> Subspace<T>
where
    B: Clone + Eq + Hash + Display + Send + Sync,
    T: Scalar,
{
    let ab = a.sparse_basis();
    let bb = b.sparse_basis();
    let vectors: Vec<Vec<T>> = ab
        .par_iter()
        .flat_map_iter(|x| {
            bb.iter()
                .map(|y| table.bracket(x, y))
                .filter(|v| !v.is_zero())
                .map(|v| v.to_dense(table.dim()))
                .collect::<Vec<_>>()
        })
        .collect();
    Subspace::from_spanning(table.dim(), vectors)
}

/// `S, [S,S], ...`, stopping at zero or when a term repeats.
pub fn derived_series<B, T>(table: &BracketTable<B, T>, s: &Subspace<T>) -> Vec<Subspace<T>>
where
    B: Clone + Eq + Hash + Display + Send + Sync,
    T: Scalar,
{
    let mut series = vec![s.clone()];
    loop {
        let cur = series.last().expect("nonempty");
        if cur.is_zero() {
            break;
        }
        let next = bracket_span(table, cur, cur);
        if &next == cur {
            break;
        }
        series.push(next);
    }
    series
}

/// Gram matrix of the Killing form `tr(ad a ad b)` on the table basis.
pub fn killing_form<B, T>(table: &BracketTable<B, T>) -> Matrix<T>
where
    B: Clone + Eq + Hash + Display + Send + Sync,
    T: Scalar,
{
    let dim = table.dim();
    // ad[a][c] = [a, c]
    let ad: Vec<Vec<SparseVec<T>>> = (0..dim)
        .into_par_iter()
        .map(|a| (0..dim).map(|c| table.bracket_basis(a, c)).collect())
        .collect();
    let rows: Vec<Vec<T>> = (0..dim)
        .into_par_iter()
        .map(|a| {
            (0..dim)
                .map(|b| {
                    // sum over c, m of (ad a)_{m c} (ad b)_{c m}
                    let mut acc = T::zero();
                    for (c, col) in ad[a].iter().enumerate() {
                        for (m, v) in col.iter() {
                            let w = ad[b][*m].get(c);
                            if !w.is_zero() {
                                acc = acc + v.clone() * w;
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

/// `{x : kappa(x, y) = 0 for all y in [L, L]}`, the solvable radical in
/// characteristic zero.
pub fn killing_radical<B, T>(table: &BracketTable<B, T>) -> Subspace<T>
where
    B: Clone + Eq + Hash + Display + Send + Sync,
    T: Scalar,
{
    let dim = table.dim();
    let whole = Subspace::whole(dim);
    let derived = bracket_span(table, &whole, &whole);
    if derived.is_zero() {
        return whole;
    }
    let kappa = killing_form(table);
    let dk = Matrix::from_rows(derived.basis().to_vec())
        .mul(&kappa)
        .expect("shapes agree");
    Subspace::from_spanning(dim, nullspace(&dk))
}

fn g_position<T: Scalar>(g: &ChevalleyAlgebra<T>, label: &DBasisIndex) -> Option<usize> {
    match label {
        DBasisIndex::E(r) => g.root_position(r.coords()),
        DBasisIndex::H(i) => Some(g.h_position(*i)),
        DBasisIndex::K(_) => None,
    }
}

/// `psi : m -> g`, `h_i + k_i -> 2 h_i`, `x_a -> x_a`. `None` when `v` is
/// not in `m`, i.e. its `h` and `k` parts differ.
pub fn psi<T: Scalar>(
    d: &DeformedAlgebra<T>,
    g: &ChevalleyAlgebra<T>,
    v: &SparseVec<T>,
) -> Option<SparseVec<T>> {
    let n = d.rank();
    if (0..n).any(|i| v.get(d.h_position(i)) != v.get(d.k_position(i))) {
        return None;
    }
    Some(SparseVec::from_pairs(v.iter().filter_map(
        |(p, c)| match d.table().label(*p) {
            DBasisIndex::K(_) => None,
            DBasisIndex::H(i) => Some((g.h_position(*i), c.clone() * T::two())),
            l @ DBasisIndex::E(_) => Some((g_position(g, l).expect("root of g"), c.clone())),
        },
    )))
}

fn check_same_cartan<T: Scalar>(
    d: &DeformedAlgebra<T>,
    g: &ChevalleyAlgebra<T>,
) -> Result<(), StructureError> {
    if d.cartan() != g.cartan() {
        return Err(StructureError::IncompatibleInputs);
    }
    Ok(())
}

/// `psi([a, b]_d) = [psi a, psi b]_g` for every pair of `m`-basis vectors.
pub fn iso_m_to_g<T: Scalar>(
    d: &DeformedAlgebra<T>,
    g: &ChevalleyAlgebra<T>,
) -> Result<CheckReport, StructureError> {
    check_same_cartan(d, g)?;
    let mut basis: Vec<SparseVec<T>> = d.roots().roots().iter().map(|r| d.e(r.coords())).collect();
    basis.extend((0..d.rank()).map(|i| d.h(i).add(&d.k(i))));
    let images: Vec<SparseVec<T>> = basis
        .iter()
        .map(|v| psi(d, g, v).expect("m basis"))
        .collect();
    let partial: Vec<CheckReport> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let mut rep = CheckReport::new("iso_m_to_g");
            for j in 0..basis.len() {
                let db = d.bracket(&basis[i], &basis[j]);
                let lhs = psi(d, g, &db);
                let rhs = g.bracket(&images[i], &images[j]);
                rep.record(lhs.as_ref() == Some(&rhs), || {
                    format!(
                        "psi([{}, {}]_d) = {} but [psi, psi]_g = {}",
                        d.table().format_element(&basis[i]),
                        d.table().format_element(&basis[j]),
                        lhs.map_or("outside m".into(), |v| g.table().format_element(&v)),
                        g.table().format_element(&rhs)
                    )
                });
            }
            rep
        })
        .collect();
    let mut out = CheckReport::new("iso_m_to_g");
    partial.into_iter().for_each(|r| out.merge(r));
    Ok(out)
}

/// At `u = 0`: on coset representatives `{x_a, h_i}` of `d / l`, with
/// `k_i = h_i mod l`, the induced bracket matches `g`.
pub fn quotient_iso_u0<T: Scalar>(
    d: &DeformedAlgebra<T>,
    g: &ChevalleyAlgebra<T>,
) -> Result<CheckReport, StructureError> {
    check_same_cartan(d, g)?;
    if !d.u().is_zero() {
        return Err(StructureError::PreconditionViolated(
            "quotient by l is only compared with g at u = 0".into(),
        ));
    }
    let project = |v: &SparseVec<T>| {
        SparseVec::from_pairs(v.iter().map(|(p, c)| {
            let label = match d.table().label(*p) {
                DBasisIndex::K(i) => DBasisIndex::H(*i),
                l => l.clone(),
            };
            (
                g_position(g, &label).expect("representative in g"),
                c.clone(),
            )
        }))
    };
    let reps: Vec<usize> = (0..d.dim())
        .filter(|&p| !matches!(d.table().label(p), DBasisIndex::K(_)))
        .collect();
    let mut rep = CheckReport::new("quotient_iso_u0");
    for &a in &reps {
        for &b in &reps {
            let lhs = project(&d.table().bracket_basis(a, b));
            let ga = g_position(g, d.table().label(a)).expect("representative");
            let gb = g_position(g, d.table().label(b)).expect("representative");
            let rhs = g.table().bracket_basis(ga, gb);
            rep.record(lhs == rhs, || {
                format!(
                    "[{}, {}] mod l = {} but in g = {}",
                    d.table().label(a),
                    d.table().label(b),
                    g.table().format_element(&lhs),
                    g.table().format_element(&rhs)
                )
            });
        }
    }
    Ok(rep)
}
