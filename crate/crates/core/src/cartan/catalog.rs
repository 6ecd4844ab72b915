//! Named finite-type Cartan matrices, Bourbaki node numbering.
//!
//! Each type is written as an (integer, doubled where needed) Gram matrix of
//! the simple roots; the Cartan matrix is `a_ij = 2 (alpha_i|alpha_j) /
//! (alpha_i|alpha_i)`. The result goes through full validation.

use super::{CartanError, CartanMatrix};

/// Largest rank the catalog accepts.
pub const MAX_RANK: usize = 8;

/// Cartan matrix for a catalog name such as `"A2"`, `"B3"`, `"E6"`, `"G2"`.
pub fn named(name: &str) -> Result<CartanMatrix, CartanError> {
    let unknown = || CartanError::UnknownCatalog(name.to_string());
    let trimmed = name.trim();
    let mut chars = trimmed.chars();
    let series = chars.next().ok_or_else(unknown)?.to_ascii_uppercase();
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    if n == 0 || n > MAX_RANK {
        return Err(unknown());
    }
    let gram = match (series, n) {
        ('A', _) => simply_laced(n, &chain_edges(n)),
        // long roots of norm 4, short of norm 2
        ('B', 2..) => two_length_chain(n, 4, -2, 2, -2),
        ('C', 2..) => two_length_chain(n, 2, -1, 4, -2),
        ('D', 4..) => {
            let mut edges = chain_edges(n - 1);
            edges.push((n - 3, n - 1));
            simply_laced(n, &edges)
        }
        ('E', 6..=8) => {
            // 1-3-4-5-...-n with 2 attached to 4
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
            simply_laced(n, &edges)
        }
        ('F', 4) => vec![
            vec![4, -2, 0, 0],
            vec![-2, 4, -2, 0],
            vec![0, -2, 2, -1],
            vec![0, 0, -1, 2],
        ],
        ('G', 2) => vec![vec![2, -3], vec![-3, 6]],
        _ => return Err(unknown()),
    };
    CartanMatrix::validate(cartan_from_gram(&gram))
}

/// All catalog names with rank at most `max_rank`.
pub fn names(max_rank: usize) -> Vec<String> {
    let max_rank = max_rank.min(MAX_RANK);
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push(format!("A{n}"));
    }
    for n in 2..=max_rank {
        out.push(format!("B{n}"));
    }
    for n in 3..=max_rank {
        out.push(format!("C{n}"));
    }
    for n in 4..=max_rank {
        out.push(format!("D{n}"));
    }
    for n in 6..=max_rank {
        out.push(format!("E{n}"));
    }
    if max_rank >= 4 {
        out.push("F4".into());
    }
    if max_rank >= 2 {
        out.push("G2".into());
    }
    out
}

fn chain_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

fn simply_laced(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        g[i][j] = -1;
        g[j][i] = -1;
    }
    g
}

/// Chain whose first `n - 1` nodes have norm `norm` and links `link`, and
/// whose last node has norm `last_norm` joined by `last_link`.
fn two_length_chain(
    n: usize,
    norm: i64,
    link: i64,
    last_norm: i64,
    last_link: i64,
) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        g[i][i] = if i + 1 == n { last_norm } else { norm };
        if i + 1 < n {
            let l = if i + 2 == n { last_link } else { link };
            g[i][i + 1] = l;
            g[i + 1][i] = l;
        }
    }
    g
}

fn cartan_from_gram(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    (0..n)
        .map(|i| (0..n).map(|j| 2 * g[i][j] / g[i][i]).collect())
        .collect()
}
