//! Root enumeration checked against two independent constructions that only
//! read raw Cartan entries, and against the classical root counts.

use std::collections::BTreeSet;

use liedeform::{catalog, CartanMatrix, RootSystem};

/// `beta(h_i) = sum_j beta_j a_ij`.
fn pairing(a: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().zip(&a[i]).map(|(b, x)| b * x).sum()
}

/// Fixed point of "apply every simple reflection to every known vector".
fn closure_oracle(a: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = a.len();
    let mut set: BTreeSet<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    loop {
        let mut next = set.clone();
        for v in &set {
            for i in 0..n {
                let mut w = v.clone();
                w[i] -= pairing(a, v, i);
                next.insert(w);
            }
        }
        if next.len() == set.len() {
            return next;
        }
        set = next;
    }
}

/// Positive roots grown by height: `beta + alpha_i` is a root iff
/// `q = p - beta(h_i) > 0`, where `p` is the length of the downward string.
fn string_oracle(a: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    let n = a.len();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    while !layer.is_empty() {
        roots.extend(layer.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if !roots.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing(a, beta, i) > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
    }
    roots
}

fn classical_count(name: &str) -> usize {
    let n: usize = name[1..].parse().unwrap();
    match &name[..1] {
        "A" => n * (n + 1),
        "B" | "C" => 2 * n * n,
        "D" => 2 * n * (n - 1),
        "E" => [72, 126, 240][n - 6],
        "F" => 48,
        "G" => 12,
        _ => unreachable!(),
    }
}

#[test]
fn closure_oracle_agrees_with_root_system() {
    for name in catalog::names(6) {
        let c = catalog::named(&name).unwrap();
        let rs = RootSystem::generate(&c);
        let oracle = closure_oracle(c.entries());
        let ours: BTreeSet<Vec<i64>> = rs.roots().iter().map(|r| r.coords().to_vec()).collect();
        assert_eq!(ours, oracle, "{name}");
    }
}

#[test]
fn string_oracle_agrees_on_positive_roots() {
    for name in catalog::names(8) {
        let c = catalog::named(&name).unwrap();
        let rs = RootSystem::generate(&c);
        let ours: BTreeSet<Vec<i64>> = rs.positive().map(|r| r.coords().to_vec()).collect();
        assert_eq!(ours, string_oracle(c.entries()), "{name}");
        assert_eq!(rs.len(), classical_count(&name), "{name}");
    }
}

#[test]
fn headline_counts() {
    for (name, count) in [("A2", 6), ("G2", 12), ("F4", 48)] {
        let c = catalog::named(name).unwrap();
        assert_eq!(closure_oracle(c.entries()).len(), count);
        assert_eq!(RootSystem::generate(&c).len(), count);
    }
}

#[test]
fn transposed_cartan_gives_dual_system_of_same_size() {
    for name in ["B3", "C4", "F4", "G2"] {
        let c = catalog::named(name).unwrap();
        let n = c.rank();
        let t: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| c.entry(j, i)).collect())
            .collect();
        let dual = CartanMatrix::validate(t).unwrap();
        assert_eq!(
            RootSystem::generate(&dual).len(),
            RootSystem::generate(&c).len()
        );
    }
}

#[test]
fn highest_root_is_dominant_and_unique_maximal() {
    for name in catalog::names(8) {
        let c = catalog::named(&name).unwrap();
        let rs = RootSystem::generate(&c);
        let top = rs.highest();
        for i in 0..rs.rank() {
            assert!(pairing(c.entries(), top.coords(), i) >= 0, "{name}");
        }
        for r in rs.positive() {
            assert!(
                r.coords().iter().zip(top.coords()).all(|(a, b)| a <= b),
                "{name} {r}"
            );
        }
    }
}
