//! The simple Lie algebra `g` on a Chevalley basis `{x_alpha, h_i}`.
//!
//! Structure constants `N_{alpha,beta}` come from the extraspecial-pair
//! algorithm: positive roots are taken in (height, lex) order, each
//! non-simple positive root `gamma` gets the pair `(xi, zeta)` with `xi`
//! minimal and `N_{xi,zeta} = p + 1 > 0`; every other constant follows from
//!
//! * `N_{a,b} = -N_{b,a}` and `N_{-a,-b} = -N_{a,b}`,
//! * `N_{a,b} / (c|c) = N_{b,c} / (a|a) = N_{c,a} / (b|b)` when `a + b + c = 0`,
//! * the four-term relation for `a + b + c + d = 0` with no opposite pair.
//!
//! `[x_alpha, x_-alpha]` is the coroot `2 h_alpha / (alpha|alpha)`, so the
//! invariant form has `(x_alpha | x_-alpha) = 2 / (alpha|alpha)`. The table is
//! checked against the Jacobi identity before it is returned.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::cartan::{CartanElement, CartanMatrix, WeightVector};
use crate::exactla::Matrix;
use crate::report::CheckReport;
use crate::roots::{Root, RootSystem};
use crate::scalar::Scalar;
use crate::table::{BracketTable, SparseVec, TableExport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChevalleyError {
    #[error("Jacobi identity fails on the Chevalley table: {0}")]
    JacobiViolation(String),
    #[error("root system does not belong to the given Cartan matrix")]
    IncompatibleInputs,
    #[error("malformed table export: {0}")]
    Import(String),
}

/// Basis label of `g`: a root vector `x_alpha` or a Cartan element `h_i`
/// (zero-based; displayed one-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GBasisIndex {
    E(Root),
    H(usize),
}

impl fmt::Display for GBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GBasisIndex::E(r) => write!(f, "E{r}"),
            GBasisIndex::H(i) => write!(f, "H{}", i + 1),
        }
    }
}

/// Parses `E[1,-1]`-style root labels.
pub(crate) fn parse_root_label(s: &str) -> Option<Root> {
    let inner = s.strip_prefix("E[")?.strip_suffix(']')?;
    let coords = inner
        .split(',')
        .map(|c| c.trim().parse::<i64>().ok())
        .collect::<Option<Vec<i64>>>()?;
    Root::new(coords)
}

/// Parses the one-based index in `H3` / `K3`.
pub(crate) fn parse_indexed_label(s: &str, prefix: char) -> Option<usize> {
    let n: usize = s.strip_prefix(prefix)?.parse().ok()?;
    n.checked_sub(1)
}

impl FromStr for GBasisIndex {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(r) = parse_root_label(s) {
            return Ok(GBasisIndex::E(r));
        }
        parse_indexed_label(s, 'H')
            .map(GBasisIndex::H)
            .ok_or_else(|| format!("bad g basis label {s:?}"))
    }
}

/// Integer Chevalley structure constants `N_{a,b}` keyed by root positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    n: HashMap<(usize, usize), i64>,
}

impl StructureConstants {
    pub fn compute(rs: &RootSystem) -> Self {
        Carter::new(rs).run()
    }

    /// `N_{a,b}` for root positions `a`, `b`; zero when `a + b` is not a root.
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.n.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }
}

struct Carter<'a> {
    rs: &'a RootSystem,
    pos: HashMap<(usize, usize), i64>,
}

impl<'a> Carter<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        Self {
            rs,
            pos: HashMap::new(),
        }
    }

    fn coords(&self, i: usize) -> &[i64] {
        self.rs.roots()[i].coords()
    }

    fn positive(&self, i: usize) -> bool {
        self.rs.roots()[i].is_positive()
    }

    fn norm(&self, i: usize) -> i64 {
        self.rs.norm(self.coords(i))
    }

    fn combine(&self, a: usize, b: usize, sign: i64) -> Option<usize> {
        let v: Vec<i64> = self
            .coords(a)
            .iter()
            .zip(self.coords(b))
            .map(|(x, y)| x + sign * y)
            .collect();
        self.rs.position(&v)
    }

    fn neg(&self, a: usize) -> usize {
        let v: Vec<i64> = self.coords(a).iter().map(|c| -c).collect();
        self.rs.position(&v).expect("root system is symmetric")
    }

    fn lookup_positive(&self, a: usize, b: usize) -> i64 {
        *self
            .pos
            .get(&(a, b))
            .unwrap_or_else(|| panic!("N for positive pair ({a}, {b}) requested before it was set"))
    }

    /// `N_{a,b}` for arbitrary roots whose sum is a root, using only
    /// constants of positive pairs already fixed.
    fn any(&self, a: usize, b: usize) -> Ratio<i64> {
        let Some(c) = self.combine(a, b, 1) else {
            return Ratio::from_integer(0);
        };
        match (self.positive(a), self.positive(b)) {
            (true, true) => Ratio::from_integer(self.lookup_positive(a, b)),
            (false, false) => Ratio::from_integer(-self.lookup_positive(self.neg(a), self.neg(b))),
            (false, true) => -self.any(b, a),
            (true, false) => {
                if self.positive(c) {
                    // N_{a,b} = (c|c)/(a|a) N_{b,-c}, with b and -c negative
                    let nb_c = -self.lookup_positive(self.neg(b), c);
                    Ratio::new(self.norm(c), self.norm(a)) * nb_c
                } else {
                    // N_{a,b} = (c|c)/(b|b) N_{-c,a}, with -c and a positive
                    let n_ca = self.lookup_positive(self.neg(c), a);
                    Ratio::new(self.norm(c), self.norm(b)) * n_ca
                }
            }
        }
    }

    fn insert(&mut self, a: usize, b: usize, v: i64) {
        self.pos.insert((a, b), v);
        self.pos.insert((b, a), -v);
    }

    fn run(mut self) -> StructureConstants {
        let rs = self.rs;
        let positives: Vec<usize> = (0..rs.len()).filter(|&i| self.positive(i)).collect();
        for &g in &positives {
            if rs.roots()[g].height() < 2 {
                continue;
            }
            let pairs: Vec<(usize, usize)> = positives
                .iter()
                .filter_map(|&a| {
                    let b = self.combine(g, a, -1)?;
                    self.positive(b).then_some((a, b))
                })
                .collect();
            let (xi, zeta) = pairs[0];
            let (p, _) = rs
                .root_string(self.coords(xi), self.coords(zeta))
                .expect("extraspecial pair are distinct roots");
            let n_xz = p + 1;
            self.insert(xi, zeta, n_xz);
            for &(a, b) in &pairs[1..] {
                if self.pos.contains_key(&(a, b)) {
                    continue;
                }
                let (mxi, mzeta) = (self.neg(xi), self.neg(zeta));
                // four-term relation on (a, b, -xi, -zeta)
                let mut sum = Ratio::from_integer(0);
                if let Some(bx) = self.combine(b, xi, -1) {
                    sum += self.any(b, mxi) * self.any(a, mzeta) / self.norm(bx);
                }
                if let Some(ax) = self.combine(a, xi, -1) {
                    sum += self.any(mxi, a) * self.any(b, mzeta) / self.norm(ax);
                }
                let v = sum * self.norm(g) / n_xz;
                assert!(v.is_integer(), "non-integral structure constant");
                self.insert(a, b, v.to_integer());
            }
        }
        let mut n = HashMap::new();
        for a in 0..rs.len() {
            for b in 0..rs.len() {
                if self.combine(a, b, 1).is_some() {
                    let v = self.any(a, b);
                    assert!(v.is_integer(), "non-integral structure constant");
                    n.insert((a, b), v.to_integer());
                }
            }
        }
        StructureConstants { n }
    }
}

/// `g` as an explicit bracket table with its invariant form.
#[derive(Debug, Clone, PartialEq)]
pub struct ChevalleyAlgebra<T> {
    roots: RootSystem,
    table: BracketTable<GBasisIndex, T>,
    gram: Matrix<T>,
}

/// Basis order of `g`: negative roots, `h_1..h_n`, positive roots.
pub fn g_basis(rs: &RootSystem) -> Vec<GBasisIndex> {
    let n = rs.rank();
    rs.negative()
        .cloned()
        .map(GBasisIndex::E)
        .chain((0..n).map(GBasisIndex::H))
        .chain(rs.positive().cloned().map(GBasisIndex::E))
        .collect()
}

fn integer_table(
    rs: &RootSystem,
    consts: &StructureConstants,
) -> BracketTable<GBasisIndex, Ratio<i64>> {
    let cartan = rs.cartan();
    let n = rs.rank();
    let basis = g_basis(rs);
    let mut t = BracketTable::new(basis);
    // g_basis order: negatives, H, positives
    let negatives = rs.negative().count();
    let basis_of_root = |r: usize| if r < negatives { r } else { r + n };
    for (ri, r) in rs.roots().iter().enumerate() {
        let e = basis_of_root(ri);
        for i in 0..n {
            let v = cartan.int_eval(r.coords(), i);
            t.set(
                negatives + i,
                e,
                SparseVec::from_pairs([(e, Ratio::from_integer(v))]),
            );
        }
        for (si, s) in rs.roots().iter().enumerate() {
            if si <= ri {
                continue;
            }
            let f = basis_of_root(si);
            let sum: Vec<i64> = r
                .coords()
                .iter()
                .zip(s.coords())
                .map(|(a, b)| a + b)
                .collect();
            if sum.iter().all(|&c| c == 0) {
                let h = rs.coroot(r.coords());
                t.set(
                    e,
                    f,
                    SparseVec::from_pairs(
                        h.iter()
                            .enumerate()
                            .map(|(j, &c)| (negatives + j, Ratio::from_integer(c))),
                    ),
                );
            } else if let Some(pi) = rs.position(&sum) {
                let c = consts.get(ri, si);
                t.set(
                    e,
                    f,
                    SparseVec::from_pairs([(basis_of_root(pi), Ratio::from_integer(c))]),
                );
            }
        }
    }
    t
}

impl<T: Scalar> ChevalleyAlgebra<T> {
    /// Builds `g` from a Cartan matrix and its root system.
    pub fn build(cartan: &CartanMatrix, roots: &RootSystem) -> Result<Self, ChevalleyError> {
        if roots.cartan() != cartan {
            return Err(ChevalleyError::IncompatibleInputs);
        }
        let consts = StructureConstants::compute(roots);
        let int_table = integer_table(roots, &consts);
        let check = int_table.verify_jacobi(false);
        if !check.passed() {
            return Err(ChevalleyError::JacobiViolation(
                check.violations.first().cloned().unwrap_or_default(),
            ));
        }
        let convert = |r: &Ratio<i64>| T::ratio(*r.numer(), *r.denom());
        let mut table = BracketTable::new(int_table.basis().to_vec());
        for (i, j, v) in int_table.entries() {
            table.set(
                i,
                j,
                SparseVec::from_pairs(v.iter().map(|(k, c)| (*k, convert(c)))),
            );
        }
        let gram = Self::invariant_gram(roots, table.basis());
        Ok(Self {
            roots: roots.clone(),
            table,
            gram,
        })
    }

    /// Convenience: validate nothing further, generate roots, build.
    pub fn from_cartan(cartan: &CartanMatrix) -> Result<Self, ChevalleyError> {
        Self::build(cartan, &RootSystem::generate(cartan))
    }

    /// Assembles an algebra from parts without checking Jacobi; used to
    /// exercise the verifiers on altered tables.
    pub fn from_parts(
        roots: RootSystem,
        table: BracketTable<GBasisIndex, T>,
        gram: Matrix<T>,
    ) -> Self {
        Self { roots, table, gram }
    }

    fn invariant_gram(roots: &RootSystem, basis: &[GBasisIndex]) -> Matrix<T> {
        let cartan = roots.cartan();
        let d = cartan.symmetrizer();
        let dim = basis.len();
        Matrix::from_fn(dim, dim, |i, j| match (&basis[i], &basis[j]) {
            (GBasisIndex::H(a), GBasisIndex::H(b)) => T::ratio(cartan.entry(*a, *b), d.get(*b)),
            (GBasisIndex::E(r), GBasisIndex::E(s))
                if r.coords().iter().zip(s.coords()).all(|(x, y)| *x == -*y) =>
            {
                T::ratio(2, roots.norm(r.coords()))
            }
            _ => T::zero(),
        })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        self.roots.cartan()
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn table(&self) -> &BracketTable<GBasisIndex, T> {
        &self.table
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    /// Basis position of `x_alpha`.
    pub fn root_position(&self, coords: &[i64]) -> Option<usize> {
        self.table
            .position(&GBasisIndex::E(Root::new(coords.to_vec())?))
    }

    pub fn h_position(&self, i: usize) -> usize {
        self.table
            .position(&GBasisIndex::H(i))
            .expect("H index in range")
    }

    /// `x_alpha` as an element. Panics if `alpha` is not a root.
    pub fn e(&self, coords: &[i64]) -> SparseVec<T> {
        SparseVec::unit(self.root_position(coords).expect("not a root"))
    }

    pub fn h(&self, i: usize) -> SparseVec<T> {
        SparseVec::unit(self.h_position(i))
    }

    /// Embeds `sum_j t_j h_j`.
    pub fn cartan_element(&self, h: &CartanElement<T>) -> SparseVec<T> {
        SparseVec::from_pairs(
            h.coords()
                .iter()
                .enumerate()
                .map(|(j, t)| (self.h_position(j), t.clone())),
        )
    }

    pub fn bracket(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> SparseVec<T> {
        self.table.bracket(x, y)
    }

    pub fn invariant_form(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> T {
        self.table.form(&self.gram, x, y)
    }

    pub fn verify_jacobi(&self) -> CheckReport {
        self.table.verify_jacobi(true)
    }

    pub fn verify_invariance(&self) -> CheckReport {
        self.table.verify_invariance(&self.gram)
    }

    /// `(ad x_{+-alpha_i})^{1 - a_ij} (x_{+-alpha_j}) = 0` for all `i != j`.
    pub fn verify_serre(&self) -> CheckReport {
        let n = self.rank();
        let cartan = self.cartan();
        let mut rep = CheckReport::new("serre");
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for sign in [1i64, -1] {
                    let mut ai = vec![0; n];
                    ai[i] = sign;
                    let mut aj = vec![0; n];
                    aj[j] = sign;
                    let x = self.e(&ai);
                    let mut v = self.e(&aj);
                    let power = 1 - cartan.entry(i, j);
                    for _ in 0..power {
                        v = self.bracket(&x, &v);
                    }
                    let sgn = if sign > 0 { "+" } else { "-" };
                    rep.record(v.is_zero(), || {
                        format!(
                            "(ad x_{sgn}a{})^{power} (x_{sgn}a{}) = {}",
                            i + 1,
                            j + 1,
                            self.table.format_element(&v)
                        )
                    });
                }
            }
        }
        rep
    }

    /// `[x_alpha, x_-alpha] = (x_alpha | x_-alpha) h_alpha` for positive roots.
    pub fn verify_opposite_brackets(&self) -> CheckReport {
        let mut rep = CheckReport::new("opposite_root_brackets");
        for r in self.roots.positive() {
            let x = self.e(r.coords());
            let y = self.e(r.negate().coords());
            let lhs = self.bracket(&x, &y);
            let lambda = WeightVector::<T>::from_ints(r.coords());
            let h_alpha = self.cartan_element(&self.cartan().nu_inverse(&lambda));
            let rhs = h_alpha.scale(&self.invariant_form(&x, &y));
            rep.record(lhs == rhs, || {
                format!(
                    "alpha = {r}: [x, x-] = {} but (x|x-) h_alpha = {}",
                    self.table.format_element(&lhs),
                    self.table.format_element(&rhs)
                )
            });
        }
        rep
    }

    /// Algebra in the rescaled basis `x_alpha -> s x_alpha`,
    /// `x_-alpha -> x_-alpha / s`, with the form transported accordingly.
    pub fn rescale_root_pair(&self, alpha: &[i64], s: &T) -> Self {
        let neg: Vec<i64> = alpha.iter().map(|c| -c).collect();
        let p = self.root_position(alpha).expect("not a root");
        let m = self.root_position(&neg).expect("not a root");
        let mut scales = vec![T::one(); self.dim()];
        scales[p] = s.clone();
        scales[m] = T::one() / s.clone();
        let gram = Matrix::from_fn(self.dim(), self.dim(), |i, j| {
            scales[i].clone() * scales[j].clone() * self.gram[(i, j)].clone()
        });
        Self {
            roots: self.roots.clone(),
            table: self.table.rescaled(&scales),
            gram,
        }
    }

    pub fn export(&self) -> GExport {
        GExport {
            cartan: self.cartan().entries().to_vec(),
            table: self.table.export(&self.gram),
        }
    }

    /// Rebuilds an algebra from its export; the Cartan matrix is revalidated
    /// and the basis must match the canonical order.
    pub fn import(export: &GExport) -> Result<Self, ChevalleyError> {
        let cartan = CartanMatrix::validate(export.cartan.clone())
            .map_err(|e| ChevalleyError::Import(e.to_string()))?;
        let roots = RootSystem::generate(&cartan);
        let (table, gram) = BracketTable::import(&export.table).map_err(ChevalleyError::Import)?;
        if table.basis() != g_basis(&roots).as_slice() {
            return Err(ChevalleyError::Import(
                "basis does not match the Cartan matrix".into(),
            ));
        }
        Ok(Self { roots, table, gram })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct GExport {
    pub cartan: Vec<Vec<i64>>,
    #[serde(flatten)]
    pub table: TableExport,
}
