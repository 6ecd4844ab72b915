//! Finite-type Cartan matrices and the Cartan subalgebra.
//!
//! Conventions: entry `a[i][j]` is `alpha_j(h_i)`. Elements of the dual space
//! are stored in the simple-root basis ([`WeightVector`]), elements of the
//! Cartan subalgebra in the `{h_i}` basis ([`CartanElement`]). The symmetrizer
//! `d` satisfies `d_i a_ij = d_j a_ji`, and `(alpha_i|alpha_j) = d_i a_ij`.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{is_positive_definite, Matrix};
use crate::scalar::Scalar;

pub mod catalog;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("Cartan matrix must be a non-empty square grid")]
    NotSquare,
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("Cartan matrix is decomposable (Dynkin graph is disconnected)")]
    NotIndecomposable,
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("Cartan matrix is not of finite type (DC is not positive definite)")]
    NotFiniteType,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("unknown catalog type {0:?}")]
    UnknownCatalog(String),
}

/// Positive integer diagonal symmetrizer with `gcd(d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetrizer(Vec<i64>);

impl Symmetrizer {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }
}

/// A validated, indecomposable, symmetrizable Cartan matrix of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    d: Symmetrizer,
}

#[derive(Serialize, Deserialize)]
struct CartanJson {
    cartan: Vec<Vec<i64>>,
}

impl Serialize for CartanMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CartanJson {
            cartan: self.a.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CartanMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CartanJson::deserialize(d)?;
        CartanMatrix::validate(raw.cartan).map_err(serde::de::Error::custom)
    }
}

impl CartanMatrix {
    /// Checks every defining property and attaches the symmetrizer.
    pub fn validate(a: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = a.len();
        if n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(CartanError::NotSquare);
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CartanError::NotGcm(format!(
                    "diagonal entry a[{i}][{i}] != 2"
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 {
                    return Err(CartanError::NotGcm(format!(
                        "positive off-diagonal a[{i}][{j}]"
                    )));
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return Err(CartanError::NotGcm(format!(
                        "zero pattern not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let d = symmetrize(&a)?;
        let cm = CartanMatrix { a, d };
        let gram: Matrix<BigRational> = Matrix::from_ints(&cm.symmetrized());
        if !is_positive_definite(&gram).expect("DC is symmetric by construction") {
            return Err(CartanError::NotFiniteType);
        }
        Ok(cm)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn symmetrizer(&self) -> &Symmetrizer {
        &self.d
    }

    /// The integer matrix `DC`, the Gram matrix of `(.|.)` on simple roots.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.d.get(i) * self.a[i][j]).collect())
            .collect()
    }

    pub fn symmetrized_matrix<T: Scalar>(&self) -> Matrix<T> {
        Matrix::from_ints(&self.symmetrized())
    }

    /// `(x|y)` for integer vectors in the simple-root basis.
    pub fn int_form(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += x[i] * self.d.get(i) * self.a[i][j] * y[j];
            }
        }
        acc
    }

    /// `x(h_i)` for an integer vector in the simple-root basis.
    pub fn int_eval(&self, x: &[i64], i: usize) -> i64 {
        self.a[i].iter().zip(x).map(|(a, c)| a * c).sum()
    }

    fn check_rank(&self, len: usize) -> Result<(), CartanError> {
        if len != self.rank() {
            return Err(CartanError::RankMismatch {
                expected: self.rank(),
                found: len,
            });
        }
        Ok(())
    }

    /// `(lambda|mu) = c_lambda^T (DC) c_mu`.
    pub fn weight_form<T: Scalar>(
        &self,
        lambda: &WeightVector<T>,
        mu: &WeightVector<T>,
    ) -> Result<T, CartanError> {
        self.check_rank(lambda.len())?;
        self.check_rank(mu.len())?;
        let n = self.rank();
        let mut acc = T::zero();
        for i in 0..n {
            if lambda.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                let g = self.d.get(i) * self.a[i][j];
                if g != 0 && !mu.0[j].is_zero() {
                    acc = acc + lambda.0[i].clone() * T::from_int(g) * mu.0[j].clone();
                }
            }
        }
        Ok(acc)
    }

    /// `lambda(h_i) = sum_j c_j a[i][j]`.
    pub fn eval_on_coroot<T: Scalar>(
        &self,
        lambda: &WeightVector<T>,
        i: usize,
    ) -> Result<T, CartanError> {
        self.check_rank(lambda.len())?;
        if i >= self.rank() {
            return Err(CartanError::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(self.a[i]
            .iter()
            .zip(&lambda.0)
            .filter(|(a, c)| **a != 0 && !c.is_zero())
            .fold(T::zero(), |acc, (a, c)| acc + T::from_int(*a) * c.clone()))
    }

    /// `(lambda(h_1), ..., lambda(h_n))`.
    pub fn coroot_values<T: Scalar>(
        &self,
        lambda: &WeightVector<T>,
    ) -> Result<Vec<T>, CartanError> {
        (0..self.rank())
            .map(|i| self.eval_on_coroot(lambda, i))
            .collect()
    }

    /// The element `h_lambda` with `(alpha_i|lambda) = alpha_i(h_lambda)`.
    /// In coordinates `t_j = d_j c_j`.
    pub fn nu_inverse<T: Scalar>(&self, lambda: &WeightVector<T>) -> CartanElement<T> {
        let h = CartanElement(
            lambda
                .0
                .iter()
                .enumerate()
                .map(|(j, c)| T::from_int(self.d.get(j)) * c.clone())
                .collect(),
        );
        debug_assert!((0..self.rank()).all(|i| {
            let ai = WeightVector::<T>::simple_root(self.rank(), i);
            self.weight_form(&ai, lambda).ok() == Some(self.eval_on_element(&ai, &h))
        }));
        h
    }

    /// `lambda(h)` for `h = sum_j t_j h_j`.
    pub fn eval_on_element<T: Scalar>(&self, lambda: &WeightVector<T>, h: &CartanElement<T>) -> T {
        (0..self.rank()).fold(T::zero(), |acc, j| {
            if h.0[j].is_zero() {
                acc
            } else {
                acc + h.0[j].clone() * self.eval_on_coroot(lambda, j).expect("rank checked")
            }
        })
    }

    /// `(h|h')` on the Cartan subalgebra, with `(h_i|h_j) = a[i][j] / d_j`.
    pub fn cartan_form_h<T: Scalar>(&self, h: &CartanElement<T>, h2: &CartanElement<T>) -> T {
        let n = self.rank();
        let mut acc = T::zero();
        for i in 0..n {
            if h.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.a[i][j] != 0 && !h2.0[j].is_zero() {
                    acc = acc
                        + h.0[i].clone() * T::ratio(self.a[i][j], self.d.get(j)) * h2.0[j].clone();
                }
            }
        }
        acc
    }

    /// The weight `alpha_i / d_i`, whose image under `nu_inverse` is `h_i`.
    pub fn coroot_weight<T: Scalar>(&self, i: usize) -> WeightVector<T> {
        let mut w = WeightVector::zero(self.rank());
        w.0[i] = T::ratio(1, self.d.get(i));
        w
    }
}

/// Spanning-tree propagation of `d_j / d_i = a_ij / a_ji`, then gcd
/// normalization. Fails when some edge outside the tree disagrees.
fn symmetrize(a: &[Vec<i64>]) -> Result<Symmetrizer, CartanError> {
    let n = a.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    d[0] = Some(BigRational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let di = d[i].clone().expect("visited");
        for j in 0..n {
            if j != i && a[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di.clone() * BigRational::new(a[i][j].into(), a[j][i].into()));
                queue.push_back(j);
            }
        }
    }
    if d.iter().any(Option::is_none) {
        return Err(CartanError::NotIndecomposable);
    }
    let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
    for i in 0..n {
        for j in 0..n {
            if &d[i] * BigInt::from(a[i][j]) != &d[j] * BigInt::from(a[j][i]) {
                return Err(CartanError::NotSymmetrizable);
            }
        }
    }
    let lcm = d.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = d.iter().map(|r| (r * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::from(0), |g, v| g.gcd(v));
    ints.into_iter()
        .map(|v| (v / &g).to_i64())
        .collect::<Option<Vec<i64>>>()
        .map(Symmetrizer)
        .ok_or(CartanError::NotFiniteType)
}

/// Coordinates of an element of the dual of the Cartan subalgebra in the
/// simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector<T>(pub Vec<T>);

impl<T: Scalar> WeightVector<T> {
    pub fn zero(n: usize) -> Self {
        Self(vec![T::zero(); n])
    }

    /// The simple root `alpha_i` (zero-based `i`).
    pub fn simple_root(n: usize, i: usize) -> Self {
        let mut w = Self::zero(n);
        w.0[i] = T::one();
        w
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }
}

/// Coordinates of an element of the Cartan subalgebra in the `{h_i}` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanElement<T>(pub Vec<T>);

impl<T: Scalar> CartanElement<T> {
    pub fn zero(n: usize) -> Self {
        Self(vec![T::zero(); n])
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn scale(&self, s: &T) -> Self {
        Self(self.0.iter().map(|a| a.clone() * s.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn w(c: &[i64]) -> WeightVector<Rational> {
        WeightVector::from_ints(c)
    }

    fn a2() -> CartanMatrix {
        CartanMatrix::validate(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    fn b2() -> CartanMatrix {
        CartanMatrix::validate(vec![vec![2, -1], vec![-2, 2]]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert_eq!(a2().symmetrizer().entries(), &[1, 1]);
        // d_1 a_12 = d_2 a_21: -d_1 = -2 d_2, so d = (2, 1)
        assert_eq!(b2().symmetrizer().entries(), &[2, 1]);
        assert_eq!(
            CartanMatrix::validate(vec![vec![2, -2], vec![-2, 2]]),
            Err(CartanError::NotFiniteType)
        );
    }

    #[test]
    fn validate_errors() {
        assert_eq!(CartanMatrix::validate(vec![]), Err(CartanError::NotSquare));
        assert_eq!(
            CartanMatrix::validate(vec![vec![2, -1]]),
            Err(CartanError::NotSquare)
        );
        assert!(matches!(
            CartanMatrix::validate(vec![vec![3]]),
            Err(CartanError::NotGcm(_))
        ));
        assert!(matches!(
            CartanMatrix::validate(vec![vec![2, 1], vec![1, 2]]),
            Err(CartanError::NotGcm(_))
        ));
        assert!(matches!(
            CartanMatrix::validate(vec![vec![2, -1], vec![0, 2]]),
            Err(CartanError::NotGcm(_))
        ));
        assert_eq!(
            CartanMatrix::validate(vec![vec![2, 0], vec![0, 2]]),
            Err(CartanError::NotIndecomposable)
        );
        // a 3-cycle whose edge ratios multiply to 2
        assert_eq!(
            CartanMatrix::validate(vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]]),
            Err(CartanError::NotSymmetrizable)
        );
        // affine A2
        assert_eq!(
            CartanMatrix::validate(vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]),
            Err(CartanError::NotFiniteType)
        );
    }

    #[test]
    fn weight_form_examples() {
        assert_eq!(
            a2().weight_form(&w(&[1, 0]), &w(&[0, 1])).unwrap(),
            q(-1, 1)
        );
        assert_eq!(b2().weight_form(&w(&[1, 0]), &w(&[1, 0])).unwrap(), q(4, 1));
        assert_eq!(
            a2().weight_form(&w(&[1, 0]), &w(&[1, 0, 0])),
            Err(CartanError::RankMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn eval_on_coroot_examples() {
        let c = a2();
        for i in 0..2 {
            for j in 0..2 {
                let aj = WeightVector::<Rational>::simple_root(2, j);
                assert_eq!(c.eval_on_coroot(&aj, i).unwrap(), q(c.entry(i, j), 1));
            }
        }
        assert_eq!(c.eval_on_coroot(&w(&[0, 0]), 1).unwrap(), q(0, 1));
        assert_eq!(c.eval_on_coroot(&w(&[1, 1]), 0).unwrap(), q(1, 1));
        assert_eq!(
            c.eval_on_coroot(&w(&[1, 1]), 2),
            Err(CartanError::IndexOutOfRange { index: 2, rank: 2 })
        );
    }

    #[test]
    fn nu_inverse_examples() {
        let c = b2();
        let h = c.nu_inverse(&w(&[1, 0]));
        assert_eq!(h.0, vec![q(2, 1), q(0, 1)]);
        assert_eq!(c.nu_inverse(&w(&[0, 0])).0, vec![q(0, 1), q(0, 1)]);
        assert_eq!(a2().nu_inverse(&w(&[1, 1])).0, vec![q(1, 1), q(1, 1)]);
    }

    #[test]
    fn cartan_form_h_a2() {
        let c = a2();
        let basis = |i: usize| {
            let mut h = CartanElement::<Rational>::zero(2);
            h.0[i] = q(1, 1);
            h
        };
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(c.cartan_form_h(&basis(i), &basis(j)), q(c.entry(i, j), 1));
            }
            assert_eq!(c.cartan_form_h(&basis(i), &CartanElement::zero(2)), q(0, 1));
        }
    }

    #[test]
    fn coroot_weight_maps_to_h_i() {
        let c = b2();
        for i in 0..2 {
            let h = c.nu_inverse(&c.coroot_weight::<Rational>(i));
            let mut e = vec![q(0, 1); 2];
            e[i] = q(1, 1);
            assert_eq!(h.0, e);
        }
    }

    #[test]
    fn json_round_trip() {
        let c = b2();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"cartan":[[2,-1],[-2,2]]}"#);
        let back: CartanMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<CartanMatrix>(r#"{"cartan":[[2,-2],[-2,2]]}"#).is_err());
    }
}
