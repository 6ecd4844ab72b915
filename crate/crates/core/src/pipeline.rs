//! One `(C, u)` case end to end: build `g` and `d`, run every check, and
//! summarize the ideal structure.

use serde::{Deserialize, Serialize};

use crate::cartan::CartanMatrix;
use crate::chevalley::ChevalleyAlgebra;
use crate::deformed::{DeformedAlgebra, SkewMatrix};
use crate::report::CheckReport;
use crate::roots::RootSystem;
use crate::scalar::Scalar;
use crate::structure::{
    build_ideal_l, build_ideal_m, derived_series, ideal_report, iso_m_to_g, killing_radical,
    quotient_iso_u0, rad_u, Subspace,
};
use crate::Error;

#[derive(Debug, Clone)]
pub struct Case<T> {
    pub g: ChevalleyAlgebra<T>,
    pub d: DeformedAlgebra<T>,
}

/// Ideal structure of `d`, with subspace bases rendered as label maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub rad_u: Vec<Vec<String>>,
    pub rad_u_dim: usize,
    pub dim_d: usize,
    pub l_basis: Vec<std::collections::BTreeMap<String, String>>,
    pub l_dim: usize,
    pub m_dim: usize,
    pub l_derived_series_dims: Vec<usize>,
    pub m_derived_series_dims: Vec<usize>,
    pub killing_radical_basis: Vec<std::collections::BTreeMap<String, String>>,
    pub killing_radical_dim: usize,
    pub killing_radical_equals_l: bool,
    pub killing_radical_contains_l: bool,
    pub gram_det: String,
}

impl<T: Scalar> Case<T> {
    pub fn build(cartan: &CartanMatrix, u: &SkewMatrix<T>) -> Result<Self, Error> {
        let g = ChevalleyAlgebra::build(cartan, &RootSystem::generate(cartan))?;
        let d = DeformedAlgebra::build(&g, u)?;
        Ok(Self { g, d })
    }

    pub fn ideal_l(&self) -> Subspace<T> {
        build_ideal_l(&self.d)
    }

    pub fn ideal_m(&self) -> Subspace<T> {
        build_ideal_m(&self.d)
    }

    /// Every check on `g` and `d`, in a fixed order.
    pub fn verify(&self) -> Vec<CheckReport> {
        let d = &self.d;
        let g = &self.g;
        let mut out = vec![
            g.verify_serre(),
            g.verify_opposite_brackets(),
            named(g.verify_jacobi(), "g_jacobi"),
            named(g.verify_invariance(), "g_invariance"),
            named(d.verify_jacobi(), "d_jacobi"),
            named(d.verify_invariance(), "d_invariance"),
            d.verify_reduction_identities(),
        ];
        let l = self.ideal_l();
        let m = self.ideal_m();
        out.push(ideal_report(d.table(), &l, "l_is_ideal"));
        let mut series = CheckReport::new("l_derived_series");
        let s = derived_series(d.table(), &l);
        let ok = if l.is_zero() {
            s.len() == 1
        } else {
            s.len() == 2 && s[1].is_zero()
        };
        series.record(ok, || {
            format!(
                "derived series dims {:?}",
                s.iter().map(Subspace::dim).collect::<Vec<_>>()
            )
        });
        out.push(series);
        out.push(ideal_report(d.table(), &m, "m_is_ideal"));
        let mut mdim = CheckReport::new("m_dim");
        let want = d.roots().len() + d.rank();
        mdim.record(m.dim() == want, || {
            format!("dim m = {}, expected {want}", m.dim())
        });
        out.push(mdim);
        out.push(iso_m_to_g(d, g).expect("same Cartan matrix"));
        let rad = killing_radical(d.table());
        if d.u().is_zero() {
            let mut eq = CheckReport::new("killing_radical_equals_l");
            eq.record(rad == l, || {
                format!("dim radical {} vs dim l {}", rad.dim(), l.dim())
            });
            out.push(eq);
            let mut split = CheckReport::new("m_l_complementary");
            split.record(
                m.intersection(&l).is_zero() && m.sum(&l).dim() == d.dim(),
                || "m and l do not split d".into(),
            );
            out.push(split);
            out.push(quotient_iso_u0(d, g).expect("u is zero"));
            out.push(d.verify_u0_reduction());
        } else {
            let mut c = CheckReport::new("killing_radical_contains_l");
            c.record(rad.contains_subspace(&l), || {
                "l not inside the Killing radical".into()
            });
            out.push(c);
        }
        out
    }

    pub fn structure(&self) -> StructureSummary {
        let d = &self.d;
        let l = self.ideal_l();
        let m = self.ideal_m();
        let rad = killing_radical(d.table());
        let rad_u = rad_u(d.cartan(), d.u());
        let render = |s: &Subspace<T>| {
            s.sparse_basis()
                .iter()
                .map(|v| d.table().element_to_map(v))
                .collect::<Vec<_>>()
        };
        StructureSummary {
            rad_u_dim: rad_u.len(),
            rad_u: rad_u
                .iter()
                .map(|w| w.coords().iter().map(ToString::to_string).collect())
                .collect(),
            dim_d: d.dim(),
            l_basis: render(&l),
            l_dim: l.dim(),
            m_dim: m.dim(),
            l_derived_series_dims: derived_series(d.table(), &l)
                .iter()
                .map(Subspace::dim)
                .collect(),
            m_derived_series_dims: derived_series(d.table(), &m)
                .iter()
                .map(Subspace::dim)
                .collect(),
            killing_radical_basis: render(&rad),
            killing_radical_dim: rad.dim(),
            killing_radical_equals_l: rad == l,
            killing_radical_contains_l: rad.contains_subspace(&l),
            gram_det: d.gram_det().to_string(),
        }
    }
}

fn named(mut r: CheckReport, name: &str) -> CheckReport {
    r.check = name.into();
    r
}
