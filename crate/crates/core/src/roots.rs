//! Root systems of finite-type Cartan matrices.
//!
//! Roots are generated as the orbit of the simple roots under the simple
//! reflections `s_i(x) = x - x(h_i) alpha_i`, then sorted by height and
//! lexicographically by coordinates so downstream tables are reproducible.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::cartan::CartanMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("{0:?} is not a root")]
    NotARoot(Vec<i64>),
    #[error("root string requested for equal or opposite roots")]
    EqualOrOpposite,
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    coords: Vec<i64>,
    height: i64,
}

impl Root {
    /// Wraps a nonzero sign-coherent integer vector. Returns `None` for the
    /// zero vector or mixed signs.
    pub fn new(coords: Vec<i64>) -> Option<Self> {
        let pos = coords.iter().all(|&c| c >= 0);
        let neg = coords.iter().all(|&c| c <= 0);
        if coords.iter().all(|&c| c == 0) || !(pos || neg) {
            return None;
        }
        let height = coords.iter().sum();
        Some(Self { coords, height })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn is_positive(&self) -> bool {
        self.height > 0
    }

    pub fn negate(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|c| -c).collect(),
            height: -self.height,
        }
    }

    /// Index of the simple root this is, if any.
    pub fn simple_index(&self) -> Option<usize> {
        if self.height != 1 {
            return None;
        }
        self.coords.iter().position(|&c| c == 1)
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height
            .cmp(&other.height)
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// The finite root system of a Cartan matrix, in (height, lex) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    cartan: CartanMatrix,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn generate(cartan: &CartanMatrix) -> Self {
        let n = cartan.rank();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            for sign in [1, -1] {
                let mut v = vec![0; n];
                v[i] = sign;
                if seen.insert(v.clone(), ()).is_none() {
                    queue.push_back(v);
                }
            }
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let k = cartan.int_eval(&v, i);
                if k == 0 {
                    continue;
                }
                let mut w = v.clone();
                w[i] -= k;
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), ());
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<Root> = seen
            .into_keys()
            .map(|v| Root::new(v).expect("reflection orbit of a root is sign-coherent"))
            .collect();
        roots.sort();
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coords.clone(), i))
            .collect();
        Self {
            cartan: cartan.clone(),
            roots,
            index,
        }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    /// All roots, negatives first.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn negative(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !r.is_positive())
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    /// Position of a root in [`RootSystem::roots`].
    pub fn position(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn get(&self, v: &[i64]) -> Option<&Root> {
        self.position(v).map(|i| &self.roots[i])
    }

    pub fn highest(&self) -> &Root {
        self.roots.last().expect("root system is nonempty")
    }

    /// `(p, q)` with `beta - k alpha` a root for `0 <= k <= p` and
    /// `beta + k alpha` a root for `0 <= k <= q`.
    pub fn root_string(&self, alpha: &[i64], beta: &[i64]) -> Result<(i64, i64), RootError> {
        for v in [alpha, beta] {
            if !self.is_root(v) {
                return Err(RootError::NotARoot(v.to_vec()));
            }
        }
        let opposite = alpha.iter().zip(beta).all(|(a, b)| *a == -*b);
        if alpha == beta || opposite {
            return Err(RootError::EqualOrOpposite);
        }
        let walk = |sign: i64| {
            let mut k = 0;
            loop {
                let next: Vec<i64> = beta
                    .iter()
                    .zip(alpha)
                    .map(|(b, a)| b + sign * (k + 1) * a)
                    .collect();
                if !self.is_root(&next) {
                    return k;
                }
                k += 1;
            }
        };
        Ok((walk(-1), walk(1)))
    }

    /// `(alpha|alpha)` in the integer normalization `(alpha_i|alpha_i) = 2 d_i`.
    pub fn norm(&self, v: &[i64]) -> i64 {
        self.cartan.int_form(v, v)
    }

    /// Integer coordinates of the coroot `2 h_alpha / (alpha|alpha)` in the
    /// `{h_i}` basis.
    pub fn coroot(&self, v: &[i64]) -> Vec<i64> {
        let norm = self.norm(v);
        let d = self.cartan.symmetrizer();
        v.iter()
            .enumerate()
            .map(|(j, c)| {
                let num = 2 * c * d.get(j);
                debug_assert_eq!(num % norm, 0, "coroot not integral");
                num / norm
            })
            .collect()
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, v: &[i64], i: usize) -> Vec<i64> {
        let mut w = v.to_vec();
        w[i] -= self.cartan.int_eval(v, i);
        w
    }

    /// Dynkin type label inferred from rank, root count and root lengths.
    pub fn type_name(&self) -> String {
        let n = self.rank() as i64;
        let count = self.len() as i64;
        let long = self
            .roots
            .iter()
            .map(|r| self.norm(&r.coords))
            .max()
            .unwrap_or(0);
        let short_count = self
            .roots
            .iter()
            .filter(|r| self.norm(&r.coords) < long)
            .count() as i64;
        let name = match (short_count, count) {
            (0, c) if c == n * (n + 1) => format!("A{n}"),
            (0, c) if n >= 4 && c == 2 * n * (n - 1) => format!("D{n}"),
            (0, 72) if n == 6 => "E6".into(),
            (0, 126) if n == 7 => "E7".into(),
            (0, 240) if n == 8 => "E8".into(),
            (_, 12) if n == 2 => "G2".into(),
            (24, 48) if n == 4 => "F4".into(),
            (s, c) if c == 2 * n * n && s == 2 * n => format!("B{n}"),
            (s, c) if c == 2 * n * n && s == 2 * n * (n - 1) => format!("C{n}"),
            _ => "unknown".into(),
        };
        name
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::catalog;

    fn sys(name: &str) -> RootSystem {
        RootSystem::generate(&catalog::named(name).unwrap())
    }

    #[test]
    fn a1_and_a2() {
        let a1 = sys("A1");
        assert_eq!(a1.len(), 2);
        assert!(a1.is_root(&[1]) && a1.is_root(&[-1]));
        let a2 = sys("A2");
        assert_eq!(a2.len(), 6);
        let pos: Vec<Vec<i64>> = a2.positive().map(|r| r.coords().to_vec()).collect();
        assert_eq!(pos, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn g2_count() {
        assert_eq!(sys("G2").len(), 12);
        // the other Cartan matrix convention for G2 gives the same count
        let alt = CartanMatrix::validate(vec![vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(RootSystem::generate(&alt).len(), 12);
    }

    #[test]
    fn root_strings() {
        let a2 = sys("A2");
        assert_eq!(a2.root_string(&[1, 0], &[0, 1]), Ok((0, 1)));
        assert_eq!(a2.root_string(&[1, 0], &[1, 1]), Ok((1, 0)));
        assert_eq!(
            a2.root_string(&[1, 0], &[1, 0]),
            Err(RootError::EqualOrOpposite)
        );
        assert_eq!(
            a2.root_string(&[1, 0], &[-1, 0]),
            Err(RootError::EqualOrOpposite)
        );
        assert_eq!(
            a2.root_string(&[2, 0], &[1, 0]),
            Err(RootError::NotARoot(vec![2, 0]))
        );
        let g2 = sys("G2");
        // alpha_1 short: string alpha_2, alpha_2 + alpha_1, ..., alpha_2 + 3 alpha_1
        let (p, q) = g2.root_string(&[1, 0], &[0, 1]).unwrap();
        assert_eq!((p, q), (0, 3));
        let c = g2.cartan();
        assert_eq!(
            p - q,
            2 * c.int_form(&[0, 1], &[1, 0]) / c.int_form(&[1, 0], &[1, 0])
        );
    }

    #[test]
    fn is_root_examples() {
        let a2 = sys("A2");
        assert!(a2.is_root(&[1, 1]));
        assert!(!a2.is_root(&[2, 0]));
        assert!(!a2.is_root(&[0, 0]));
    }

    #[test]
    fn root_wrapper_rejects_bad_vectors() {
        assert!(Root::new(vec![0, 0]).is_none());
        assert!(Root::new(vec![1, -1]).is_none());
        let r = Root::new(vec![-1, -2]).unwrap();
        assert!(!r.is_positive());
        assert_eq!(r.height(), -3);
        assert_eq!(r.negate().coords(), &[1, 2]);
        assert_eq!(r.to_string(), "[-1,-2]");
    }

    #[test]
    fn closure_and_symmetry() {
        for name in catalog::names(6) {
            let s = sys(&name);
            assert_eq!(s.len() % 2, 0);
            for r in s.roots() {
                assert!(s.is_root(r.negate().coords()), "{name}");
                for i in 0..s.rank() {
                    assert!(s.is_root(&s.reflect(r.coords(), i)), "{name}");
                }
            }
            // ordering: negatives first, heights nondecreasing
            assert!(s.roots().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn coroots_are_integral_and_simple_coroots_are_basis() {
        let f4 = sys("F4");
        for i in 0..4 {
            let mut e = vec![0; 4];
            e[i] = 1;
            assert_eq!(f4.coroot(&e), e);
        }
        for r in f4.roots() {
            let h = f4.coroot(r.coords());
            // alpha(coroot alpha) = 2
            let val: i64 = (0..4)
                .map(|j| h[j] * f4.cartan().int_eval(r.coords(), j))
                .sum();
            assert_eq!(val, 2);
        }
    }

    #[test]
    fn type_names() {
        for name in catalog::names(8) {
            let expected = if name == "C2" {
                "B2".to_string()
            } else {
                name.clone()
            };
            assert_eq!(sys(&name).type_name(), expected);
        }
    }
}
