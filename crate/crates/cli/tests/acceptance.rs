//! The ten acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use liedeform::pipeline::Case;
use liedeform::structure::{
    build_ideal_l, build_ideal_m, derived_series, is_ideal, iso_m_to_g, killing_radical,
    quotient_iso_u0,
};
use liedeform::{catalog, CheckReport, DAlgebra, GAlgebra, RootSystem, Subspace, UMatrix};

const TYPES: [&str; 12] = [
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4",
];
const SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

struct Built {
    label: String,
    case: Case<liedeform::Rational>,
}

fn cases() -> Vec<Built> {
    let mut out = Vec::new();
    for name in TYPES {
        let c = catalog::named(name).unwrap();
        let us = std::iter::once(("zero".to_string(), UMatrix::zero(c.rank()))).chain(
            SEEDS
                .iter()
                .map(|&s| (format!("seed {s}"), UMatrix::random(c.rank(), s))),
        );
        for (tag, u) in us {
            out.push(Built {
                label: format!("{name}, u = {tag}"),
                case: Case::build(&c, &u).unwrap(),
            });
        }
    }
    out
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require_report(r: &CheckReport, label: &str) -> Result<(), String> {
    require(r.passed(), || {
        format!(
            "{label}: {} has {} violations, first {:?}",
            r.check,
            r.violation_count,
            r.violations.first()
        )
    })
}

/// Reflection closure over raw Cartan entries, independent of the library.
fn closure_count(a: &[Vec<i64>]) -> usize {
    let n = a.len();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        set.insert(v);
    }
    loop {
        let mut next = set.clone();
        for v in &set {
            for i in 0..n {
                let k: i64 = v.iter().zip(&a[i]).map(|(x, y)| x * y).sum();
                let mut w = v.clone();
                w[i] -= k;
                next.insert(w);
            }
        }
        if next.len() == set.len() {
            return set.len();
        }
        set = next;
    }
}

fn criterion_1(cases: &[Built]) -> Result<(), String> {
    for b in cases {
        require_report(&b.case.d.verify_jacobi(), &b.label)?;
    }
    Ok(())
}

fn criterion_2(cases: &[Built]) -> Result<(), String> {
    for b in cases {
        let d = &b.case.d;
        require(d.gram().is_symmetric(), || {
            format!("{}: Gram not symmetric", b.label)
        })?;
        require_report(&d.verify_invariance(), &b.label)?;
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    for name in catalog::names(catalog::MAX_RANK) {
        let g =
            GAlgebra::from_cartan(&catalog::named(&name).unwrap()).map_err(|e| e.to_string())?;
        let r = g.verify_opposite_brackets();
        require(r.cases as usize == g.roots().len() / 2, || {
            format!("{name}: not every positive root checked")
        })?;
        require_report(&r, &name)?;
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    for name in catalog::names(catalog::MAX_RANK) {
        let g =
            GAlgebra::from_cartan(&catalog::named(&name).unwrap()).map_err(|e| e.to_string())?;
        require_report(&g.verify_serre(), &name)?;
    }
    // the power 1 - a_12 = 4 in G2 is needed: the cube does not vanish
    let g2 = GAlgebra::from_cartan(&catalog::named("G2").unwrap()).unwrap();
    require(g2.cartan().entry(0, 1) == -3, || {
        "G2 has no -3 entry in row 1".into()
    })?;
    let x = g2.e(&[1, 0]);
    let mut v = g2.e(&[0, 1]);
    for _ in 0..3 {
        v = g2.bracket(&x, &v);
    }
    require(!v.is_zero(), || "G2: third power already vanishes".into())
}

fn criterion_5(cases: &[Built]) -> Result<(), String> {
    for b in cases {
        let d = &b.case.d;
        let m = build_ideal_m(d);
        require(is_ideal(d.table(), &m), || {
            format!("{}: m is not an ideal", b.label)
        })?;
        require(m.dim() == d.roots().len() + d.rank(), || {
            format!("{}: dim m = {}", b.label, m.dim())
        })?;
        require_report(
            &iso_m_to_g(d, &b.case.g).map_err(|e| e.to_string())?,
            &b.label,
        )?;
    }
    Ok(())
}

fn criterion_6(cases: &[Built]) -> Result<(), String> {
    for b in cases {
        let d = &b.case.d;
        let l = build_ideal_l(d);
        require(is_ideal(d.table(), &l), || {
            format!("{}: l is not an ideal", b.label)
        })?;
        let series = derived_series(d.table(), &l);
        let zero = Subspace::zero(d.dim());
        // with l = 0 the series is the single term 0
        let expected = if l.is_zero() {
            vec![zero]
        } else {
            vec![l.clone(), zero]
        };
        require(series == expected, || {
            format!(
                "{}: derived series dims {:?}",
                b.label,
                series.iter().map(Subspace::dim).collect::<Vec<_>>()
            )
        })?;
        let rad = killing_radical(d.table());
        if d.u().is_zero() {
            require(rad == l, || {
                format!("{}: Killing radical differs from l", b.label)
            })?;
            require_report(
                &quotient_iso_u0(d, &b.case.g).map_err(|e| e.to_string())?,
                &b.label,
            )?;
        } else {
            require(rad.contains_subspace(&l), || {
                format!("{}: l not in Killing radical", b.label)
            })?;
        }
    }
    Ok(())
}

fn criterion_7(cases: &[Built]) -> Result<(), String> {
    for b in cases {
        let r = b.case.d.verify_reduction_identities();
        require(
            r.cases as usize == 2 * b.case.d.rank() * b.case.d.roots().len(),
            || format!("{}: wrong case count {}", b.label, r.cases),
        )?;
        require_report(&r, &b.label)?;
    }
    Ok(())
}

fn criterion_8(cases: &[Built]) -> Result<(), String> {
    for (name, count) in [("A2", 6), ("G2", 12), ("F4", 48)] {
        let c = catalog::named(name).unwrap();
        let ours = RootSystem::generate(&c).len();
        let oracle = closure_count(c.entries());
        require(ours == count && oracle == count, || {
            format!("{name}: {ours} roots, oracle {oracle}")
        })?;
    }
    for b in cases {
        let d = &b.case.d;
        require(d.dim() == d.roots().len() + 2 * d.rank(), || {
            format!("{}: dim d = {}", b.label, d.dim())
        })?;
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let c = catalog::named("A2").unwrap();
    let g = GAlgebra::from_cartan(&c).unwrap();
    let mut flips = 0;
    for u in [UMatrix::zero(2), UMatrix::random(2, 1)] {
        let d = DAlgebra::build(&g, &u).unwrap();
        let entries: Vec<(usize, usize, Vec<usize>)> = d
            .table()
            .entries()
            .map(|(i, j, v)| (i, j, v.iter().map(|(k, _)| *k).collect()))
            .collect();
        for (i, j, ks) in entries {
            for k in ks {
                let t = d.table().with_coefficient_negated(i, j, k);
                let bad =
                    DAlgebra::from_parts(d.roots().clone(), d.u().clone(), t, d.gram().clone());
                let caught = !bad.verify_jacobi().passed() || !bad.verify_invariance().passed();
                require(caught, || {
                    format!(
                        "flipping coefficient of {} in [{}, {}] went unnoticed",
                        d.table().label(k),
                        d.table().label(i),
                        d.table().label(j)
                    )
                })?;
                flips += 1;
            }
        }
    }
    require(flips > 0, || "no structure constants to flip".into())
}

fn criterion_10(started: Instant) -> Result<(), String> {
    let bin = env!("CARGO_BIN_EXE_liedeform");
    let args = ["verify", "--catalog", "B3", "--u", "random", "--seed", "7"];
    let run = || {
        Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    require(a.status.code() == Some(0), || {
        format!("exit {:?}", a.status.code())
    })?;
    require(!a.stdout.is_empty() && a.stdout == b.stdout, || {
        "outputs differ".into()
    })?;
    serde_json::from_slice::<serde_json::Value>(&a.stdout).map_err(|e| format!("not JSON: {e}"))?;
    let elapsed = started.elapsed();
    require(elapsed < Duration::from_secs(600), || {
        format!("suite took {elapsed:?}")
    })
}

fn main() {
    let started = Instant::now();
    let cases = cases();
    assert_eq!(cases.len(), TYPES.len() * (1 + SEEDS.len()));
    type Check<'a> = Box<dyn Fn() -> Result<(), String> + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("1 Jacobi identity on d", Box::new(|| criterion_1(&cases))),
        ("2 invariance of (.|.)_d", Box::new(|| criterion_2(&cases))),
        ("3 [x_a, x_-a] = (x_a|x_-a) h_a", Box::new(criterion_3)),
        ("4 Serre relations", Box::new(criterion_4)),
        (
            "5 m is an ideal isomorphic to g",
            Box::new(|| criterion_5(&cases)),
        ),
        (
            "6 l is a solvable ideal, radical at u = 0",
            Box::new(|| criterion_6(&cases)),
        ),
        ("7 reduction identities", Box::new(|| criterion_7(&cases))),
        ("8 root counts and dim d", Box::new(|| criterion_8(&cases))),
        ("9 mutation sensitivity", Box::new(criterion_9)),
        (
            "10 CLI determinism and runtime",
            Box::new(|| criterion_10(started)),
        ),
    ];
    let mut failed = Vec::new();
    for (name, check) in &criteria {
        let t = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", t.elapsed()),
            Err(e) => {
                println!("FAIL criterion {name}: {e}");
                failed.push(*name);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed.len(),
        criteria.len(),
        started.elapsed()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
