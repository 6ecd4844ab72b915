//! Sparse elements and antisymmetric bracket tables.
//!
//! A [`BracketTable`] stores `[b_i, b_j]` once per unordered pair `i < j`;
//! the opposite order is the negation and the diagonal is zero. The generic
//! verifiers here (Jacobi, Gram symmetry, form invariance) work for any basis
//! label type.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;
use std::hash::Hash;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactla::Matrix;
use crate::report::CheckReport;
use crate::scalar::{parse_scalar, Scalar};

/// Sparse coordinate vector over a basis: sorted by index, no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<T> {
    entries: Vec<(usize, T)>,
}

impl<T: Scalar> SparseVec<T> {
    pub fn zero() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize) -> Self {
        Self {
            entries: vec![(i, T::one())],
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, T)>) -> Self {
        let mut map: BTreeMap<usize, T> = BTreeMap::new();
        for (i, v) in pairs {
            let slot = map.entry(i).or_insert_with(T::zero);
            *slot = slot.clone() + v;
        }
        Self {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[T]) -> Self {
        Self {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<T> {
        let mut out = vec![T::zero(); dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> T {
        match self.entries.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => T::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, T)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (*i, v.clone() * s.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, -v.clone())).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Self, s: &T) -> Self {
        Self::from_pairs(
            self.entries.iter().cloned().chain(
                other
                    .entries
                    .iter()
                    .map(|(i, v)| (*i, v.clone() * s.clone())),
            ),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(other, &T::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(other, &-T::one())
    }
}

/// Antisymmetric bracket on a labelled basis.
#[derive(Debug, Clone)]
pub struct BracketTable<B, T> {
    basis: Vec<B>,
    index: HashMap<B, usize>,
    upper: Vec<SparseVec<T>>,
}

impl<B: PartialEq, T: PartialEq> PartialEq for BracketTable<B, T> {
    fn eq(&self, other: &Self) -> bool {
        // the index is a function of the basis
        self.basis == other.basis && self.upper == other.upper
    }
}

impl<B: Eq, T: Eq> Eq for BracketTable<B, T> {}

fn pair_offset(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

impl<B, T> BracketTable<B, T>
where
    B: Clone + Eq + Hash + Display + Send + Sync,
    T: Scalar,
{
    /// The zero bracket on `basis`. Panics on repeated labels.
    pub fn new(basis: Vec<B>) -> Self {
        let index: HashMap<B, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        assert_eq!(index.len(), basis.len(), "repeated basis label");
        let dim = basis.len();
        Self {
            basis,
            index,
            upper: vec![SparseVec::zero(); dim * dim.saturating_sub(1) / 2],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[B] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &B {
        &self.basis[i]
    }

    pub fn position(&self, b: &B) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Sets `[b_i, b_j] = v`, which also fixes `[b_j, b_i] = -v`.
    pub fn set(&mut self, i: usize, j: usize, v: SparseVec<T>) {
        assert!(i != j || v.is_zero(), "[b, b] must vanish");
        match i.cmp(&j) {
            std::cmp::Ordering::Less => {
                let o = pair_offset(self.dim(), i, j);
                self.upper[o] = v;
            }
            std::cmp::Ordering::Greater => {
                let o = pair_offset(self.dim(), j, i);
                self.upper[o] = v.neg();
            }
            std::cmp::Ordering::Equal => {}
        }
    }

    /// Stored half of `[b_i, b_j]` and whether it must be negated.
    fn stored(&self, i: usize, j: usize) -> Option<(&SparseVec<T>, bool)> {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => Some((&self.upper[pair_offset(self.dim(), i, j)], false)),
            std::cmp::Ordering::Greater => Some((&self.upper[pair_offset(self.dim(), j, i)], true)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec<T> {
        match self.stored(i, j) {
            Some((v, false)) => v.clone(),
            Some((v, true)) => v.neg(),
            None => SparseVec::zero(),
        }
    }

    /// Coefficient of `b_k` in `[b_i, b_j]`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> T {
        match self.stored(i, j) {
            Some((v, neg)) => {
                let c = v.get(k);
                if neg {
                    -c
                } else {
                    c
                }
            }
            None => T::zero(),
        }
    }

    /// Adds `s * [b_i, b_j]` into a dense accumulator.
    fn accumulate(&self, acc: &mut [T], i: usize, j: usize, s: &T) {
        if let Some((v, neg)) = self.stored(i, j) {
            for (k, c) in v.iter() {
                let term = s.clone() * c.clone();
                acc[*k] = if neg {
                    acc[*k].clone() - term
                } else {
                    acc[*k].clone() + term
                };
            }
        }
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = vec![T::zero(); self.dim()];
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                self.accumulate(&mut acc, *i, *j, &(a.clone() * b.clone()));
            }
        }
        SparseVec::from_dense(&acc)
    }

    /// `[b_i, y]`.
    pub fn bracket_with_basis(&self, i: usize, y: &SparseVec<T>) -> SparseVec<T> {
        let mut acc = vec![T::zero(); self.dim()];
        for (j, b) in y.iter() {
            self.accumulate(&mut acc, i, *j, b);
        }
        SparseVec::from_dense(&acc)
    }

    /// Nonzero stored pairs `(i, j, [b_i, b_j])` with `i < j`, in order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVec<T>)> {
        let dim = self.dim();
        (0..dim)
            .flat_map(move |i| (i + 1..dim).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, &self.upper[pair_offset(dim, i, j)]))
            .filter(|(_, _, v)| !v.is_zero())
    }

    /// Copy with the coefficient of `b_k` in the stored `[b_i, b_j]`
    /// (`i < j`) negated. Used to check that verifiers are not vacuous.
    pub fn with_coefficient_negated(&self, i: usize, j: usize, k: usize) -> Self {
        assert!(i < j);
        let mut out = self.clone();
        let o = pair_offset(self.dim(), i, j);
        out.upper[o] = SparseVec::from_pairs(
            self.upper[o]
                .iter()
                .map(|(m, c)| (*m, if *m == k { -c.clone() } else { c.clone() })),
        );
        out
    }

    /// Table for the rescaled basis `b'_i = s_i b_i` (all `s_i` nonzero).
    pub fn rescaled(&self, scales: &[T]) -> Self {
        assert_eq!(scales.len(), self.dim());
        let mut out = Self::new(self.basis.clone());
        for (i, j, v) in self.entries() {
            let f = scales[i].clone() * scales[j].clone();
            let w = SparseVec::from_pairs(
                v.iter()
                    .map(|(k, c)| (*k, f.clone() * c.clone() / scales[*k].clone())),
            );
            out.set(i, j, w);
        }
        out
    }

    /// Jacobiator `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]` on basis indices.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> SparseVec<T> {
        let mut acc = vec![T::zero(); self.dim()];
        self.jacobiator_into(&mut acc, a, b, c);
        SparseVec::from_dense(&acc)
    }

    fn jacobiator_into(&self, acc: &mut [T], a: usize, b: usize, c: usize) {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            if let Some((inner, neg)) = self.stored(y, z) {
                for (k, coef) in inner.iter() {
                    let s = if neg { -coef.clone() } else { coef.clone() };
                    self.accumulate(acc, x, *k, &s);
                }
            }
        }
    }

    /// Checks the Jacobi identity on basis triples. With `all_orders` every
    /// ordered triple is visited; otherwise only `a < b < c`, which suffices
    /// because the Jacobiator of an antisymmetric bracket is alternating.
    pub fn verify_jacobi(&self, all_orders: bool) -> CheckReport {
        let dim = self.dim();
        let partial: Vec<CheckReport> = (0..dim)
            .into_par_iter()
            .map(|a| {
                let mut rep = CheckReport::new("jacobi");
                let mut acc = vec![T::zero(); dim];
                let b_start = if all_orders { 0 } else { a + 1 };
                for b in b_start..dim {
                    let c_start = if all_orders { 0 } else { b + 1 };
                    for c in c_start..dim {
                        self.jacobiator_into(&mut acc, a, b, c);
                        let ok = acc.iter().all(|v| v.is_zero());
                        rep.record(ok, || {
                            format!(
                                "({}, {}, {}): jacobiator {}",
                                self.basis[a],
                                self.basis[b],
                                self.basis[c],
                                self.format_element(&SparseVec::from_dense(&acc))
                            )
                        });
                        if !ok {
                            acc.iter_mut().for_each(|v| *v = T::zero());
                        }
                    }
                }
                rep
            })
            .collect();
        let mut out = CheckReport::new("jacobi");
        for r in partial {
            out.merge(r);
        }
        out
    }

    /// Value of the bilinear form with Gram matrix `gram` on two elements.
    pub fn form(&self, gram: &Matrix<T>, x: &SparseVec<T>, y: &SparseVec<T>) -> T {
        let mut acc = T::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let g = &gram[(*i, *j)];
                if !g.is_zero() {
                    acc = acc + a.clone() * g.clone() * b.clone();
                }
            }
        }
        acc
    }

    /// Gram symmetry, then `([a,b]|c) = (a|[b,c])` on every ordered basis
    /// triple.
    pub fn verify_invariance(&self, gram: &Matrix<T>) -> CheckReport {
        let dim = self.dim();
        let mut out = CheckReport::new("invariance");
        for i in 0..dim {
            for j in i + 1..dim {
                out.record(gram[(i, j)] == gram[(j, i)], || {
                    format!(
                        "gram not symmetric at ({}, {})",
                        self.basis[i], self.basis[j]
                    )
                });
            }
        }
        let partial: Vec<CheckReport> = (0..dim)
            .into_par_iter()
            .map(|a| {
                let mut rep = CheckReport::new("invariance");
                for b in 0..dim {
                    let ab = self.stored(a, b);
                    for c in 0..dim {
                        let lhs = match ab {
                            Some((v, neg)) => {
                                let s = v.iter().fold(T::zero(), |acc, (k, x)| {
                                    acc + x.clone() * gram[(*k, c)].clone()
                                });
                                if neg {
                                    -s
                                } else {
                                    s
                                }
                            }
                            None => T::zero(),
                        };
                        let rhs = match self.stored(b, c) {
                            Some((v, neg)) => {
                                let s = v.iter().fold(T::zero(), |acc, (k, x)| {
                                    acc + gram[(a, *k)].clone() * x.clone()
                                });
                                if neg {
                                    -s
                                } else {
                                    s
                                }
                            }
                            None => T::zero(),
                        };
                        rep.record(lhs == rhs, || {
                            format!(
                                "([{}, {}] | {}) = {} but ({} | [{}, {}]) = {}",
                                self.basis[a],
                                self.basis[b],
                                self.basis[c],
                                lhs,
                                self.basis[a],
                                self.basis[b],
                                self.basis[c],
                                rhs
                            )
                        });
                    }
                }
                rep
            })
            .collect();
        for r in partial {
            out.merge(r);
        }
        out
    }

    /// Human-readable `c1*b1 + c2*b2` rendering.
    pub fn format_element(&self, x: &SparseVec<T>) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.iter()
            .map(|(i, c)| format!("({c})*{}", self.basis[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Element as a `label -> "p/q"` map.
    pub fn element_to_map(&self, x: &SparseVec<T>) -> BTreeMap<String, String> {
        x.iter()
            .map(|(i, c)| (self.basis[*i].to_string(), c.to_string()))
            .collect()
    }

    pub fn export(&self, gram: &Matrix<T>) -> TableExport {
        TableExport {
            basis: self.basis.iter().map(ToString::to_string).collect(),
            brackets: self
                .entries()
                .map(|(i, j, v)| BracketEntry {
                    left: self.basis[i].to_string(),
                    right: self.basis[j].to_string(),
                    value: self.element_to_map(v),
                })
                .collect(),
            gram: (0..gram.rows())
                .map(|i| (0..gram.cols()).map(|j| gram[(i, j)].to_string()).collect())
                .collect(),
        }
    }
}

impl<B, T> BracketTable<B, T>
where
    B: Clone + Eq + Hash + Display + FromStr + Send + Sync,
    T: Scalar,
{
    /// Rebuilds a table and Gram matrix from their exported form.
    pub fn import(export: &TableExport) -> Result<(Self, Matrix<T>), String> {
        let basis = export
            .basis
            .iter()
            .map(|s| s.parse::<B>().map_err(|_| format!("bad basis label {s:?}")))
            .collect::<Result<Vec<B>, String>>()?;
        let mut labels = std::collections::HashSet::new();
        if !basis.iter().all(|b| labels.insert(b.clone())) {
            return Err("repeated basis label".into());
        }
        let mut table = Self::new(basis);
        let pos = |t: &Self, s: &str| -> Result<usize, String> {
            let b = s
                .parse::<B>()
                .map_err(|_| format!("bad basis label {s:?}"))?;
            t.position(&b)
                .ok_or_else(|| format!("label {s:?} not in basis"))
        };
        for e in &export.brackets {
            let i = pos(&table, &e.left)?;
            let j = pos(&table, &e.right)?;
            if i == j {
                return Err(format!("bracket of {} with itself", e.left));
            }
            let mut pairs = Vec::new();
            for (label, c) in &e.value {
                let k = pos(&table, label)?;
                let c: T = parse_scalar(c).ok_or_else(|| format!("bad rational {c:?}"))?;
                pairs.push((k, c));
            }
            table.set(i, j, SparseVec::from_pairs(pairs));
        }
        let dim = table.dim();
        if export.gram.len() != dim || export.gram.iter().any(|r| r.len() != dim) {
            return Err("gram has wrong shape".into());
        }
        let mut rows = Vec::with_capacity(dim);
        for r in &export.gram {
            rows.push(
                r.iter()
                    .map(|c| parse_scalar::<T>(c).ok_or_else(|| format!("bad rational {c:?}")))
                    .collect::<Result<Vec<T>, String>>()?,
            );
        }
        Ok((table, Matrix::from_rows(rows)))
    }
}

/// Wire form of a bracket table: labels as strings, rationals as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableExport {
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
    pub gram: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    /// sl2 on (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
    fn sl2() -> BracketTable<String, Rational> {
        let mut t = BracketTable::new(vec!["e".to_string(), "h".into(), "f".into()]);
        t.set(0, 2, SparseVec::unit(1));
        t.set(1, 0, SparseVec::from_pairs([(0, q(2))]));
        t.set(1, 2, SparseVec::from_pairs([(2, q(-2))]));
        t
    }

    #[test]
    fn antisymmetry_is_structural() {
        let t = sl2();
        assert_eq!(t.bracket_basis(0, 1), SparseVec::from_pairs([(0, q(-2))]));
        assert_eq!(t.bracket_basis(1, 0), SparseVec::from_pairs([(0, q(2))]));
        assert!(t.bracket_basis(1, 1).is_zero());
        let x = SparseVec::from_pairs([(0, q(1)), (1, q(3)), (2, q(-5))]);
        assert!(t.bracket(&x, &x).is_zero());
        assert_eq!(t.coefficient(2, 0, 1), q(-1));
    }

    #[test]
    fn sl2_jacobi_and_trace_form() {
        let t = sl2();
        assert!(t.verify_jacobi(true).passed());
        assert_eq!(t.verify_jacobi(true).cases, 27);
        assert_eq!(t.verify_jacobi(false).cases, 1);
        // trace form of the defining representation: (e|f) = 1, (h|h) = 2
        let g = Matrix::from_ints(&[vec![0, 0, 1], vec![0, 2, 0], vec![1, 0, 0]]);
        assert!(t.verify_invariance(&g).passed());
        let bad = Matrix::from_ints(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(!t.verify_invariance(&bad).passed());
    }

    #[test]
    fn single_sign_flip_is_detected() {
        let t = sl2();
        let g = Matrix::from_ints(&[vec![0, 0, 1], vec![0, 2, 0], vec![1, 0, 0]]);
        let flips: Vec<(usize, usize, usize)> = t
            .entries()
            .flat_map(|(i, j, v)| v.iter().map(move |(k, _)| (i, j, *k)).collect::<Vec<_>>())
            .collect();
        assert_eq!(flips.len(), 3);
        for (i, j, k) in flips {
            let m = t.with_coefficient_negated(i, j, k);
            assert!(!m.verify_jacobi(true).passed() || !m.verify_invariance(&g).passed());
        }
    }

    #[test]
    fn rescaling_preserves_jacobi() {
        let t = sl2().rescaled(&[q(2), q(1), Rational::ratio(1, 2)]);
        assert!(t.verify_jacobi(true).passed());
        assert_eq!(t.bracket_basis(0, 2), SparseVec::unit(1));
    }

    #[test]
    fn export_import_round_trip() {
        let t = sl2();
        let g = Matrix::from_ints(&[vec![0, 0, 1], vec![0, 2, 0], vec![1, 0, 0]]);
        let e = t.export(&g);
        assert_eq!(e.brackets.len(), 3);
        let (t2, g2) = BracketTable::<String, Rational>::import(&e).unwrap();
        assert_eq!(t2, t);
        assert_eq!(g2, g);
    }

    #[test]
    fn sparse_vec_normalizes() {
        let v = SparseVec::from_pairs([(3, q(1)), (1, q(2)), (3, q(-1))]);
        assert_eq!(v.iter().cloned().collect::<Vec<_>>(), vec![(1, q(2))]);
        assert_eq!(v.get(3), q(0));
        assert_eq!(v.to_dense(4), vec![q(0), q(2), q(0), q(0)]);
        assert!(v.sub(&v).is_zero());
        assert!(v.scale(&q(0)).is_zero());
    }
}
