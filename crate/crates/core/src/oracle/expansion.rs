use alloc::vec::Vec;
use core::cmp::Ordering;

use nalgebra::DMatrix;
use num_rational::Ratio;

use super::{cap_error, SmallGraph};
use crate::error::Result;
use crate::spectral::MATRIX_CAP;
use crate::vertex::Vertex;

/// Largest graph [`exact_expansion`] enumerates (`2^24` subsets).
pub const EXACT_EXPANSION_CAP: usize = 24;

/// Exact edge expansion `min |cut(U)| / |U|` over `1 <= |U| <= |V|/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    pub value: Ratio<u64>,
    /// Lexicographically least minimizing subset, as vertex indices ascending.
    pub witness: Vec<usize>,
    pub witness_vertices: Vec<Vertex>,
    /// Number of eligible subsets evaluated.
    pub sets_examined: u64,
}

/// Compares two index sets (bitmasks) as ascending index sequences.
fn lex_cmp(mut a: u32, mut b: u32) -> Ordering {
    loop {
        match (a, b) {
            (0, 0) => return Ordering::Equal,
            (0, _) => return Ordering::Less,
            (_, 0) => return Ordering::Greater,
            _ => {}
        }
        let (la, lb) = (a.trailing_zeros(), b.trailing_zeros());
        if la != lb {
            return la.cmp(&lb);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

/// Enumerates every subset in Gray-code order, updating the cut size
/// incrementally as one vertex enters or leaves.
pub fn exact_expansion(g: &SmallGraph) -> Result<ExpansionReport> {
    let n = g.vertex_count();
    if !(2..=EXACT_EXPANSION_CAP).contains(&n) {
        return Err(cap_error(
            "exact expansion",
            n,
            EXACT_EXPANSION_CAP,
            "; use sweep_expansion_upper_bound instead",
        ));
    }
    let nbr: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(0u32, |m, &j| m | 1 << j))
        .collect();
    let half = n / 2;

    let mut set = 0u32;
    let mut size = 0usize;
    let mut cut: i64 = 0;
    // best as (cut, size, mask)
    let mut best: Option<(u64, u64, u32)> = None;
    let mut examined = 0u64;
    for i in 1u64..1 << n {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let inside = i64::from((nbr[v] & set & !bit).count_ones());
        let deg = i64::from(nbr[v].count_ones());
        if set & bit == 0 {
            cut += deg - 2 * inside;
            size += 1;
        } else {
            cut += 2 * inside - deg;
            size -= 1;
        }
        set ^= bit;
        if size == 0 || size > half {
            continue;
        }
        examined += 1;
        let (c, s) = (cut as u64, size as u64);
        let better = match best {
            None => true,
            Some((bc, bs, bm)) => match (c * bs).cmp(&(bc * s)) {
                Ordering::Less => true,
                Ordering::Equal => lex_cmp(set, bm) == Ordering::Less,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((c, s, set));
        }
    }
    let (c, s, mask) = best.expect("n >= 2 has an eligible subset");
    let witness: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
    Ok(ExpansionReport {
        value: Ratio::new(c, s),
        witness_vertices: witness.iter().map(|&i| g.vertices[i]).collect(),
        witness,
        sets_examined: examined,
    })
}

/// Upper bound on edge expansion from sweep cuts: vertices sorted by a
/// second-eigenvector of the adjacency matrix, every prefix tried as a cut
/// (measured against its smaller side).
pub fn sweep_expansion_upper_bound(g: &SmallGraph) -> Result<Ratio<u64>> {
    let n = g.vertex_count();
    if n > MATRIX_CAP as usize || n < 2 {
        return Err(cap_error("sweep cut", n, MATRIX_CAP as usize, ""));
    }
    let mut a = DMatrix::<f64>::zeros(n, n);
    for &(i, j) in &g.edges {
        a[(i, j)] = 1.0;
        a[(j, i)] = 1.0;
    }
    let eig = a.symmetric_eigen();
    let mut by_value: Vec<usize> = (0..n).collect();
    by_value.sort_by(|&x, &y| eig.eigenvalues[y].total_cmp(&eig.eigenvalues[x]));
    let fiedler = eig.eigenvectors.column(by_value[1]);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| fiedler[x].total_cmp(&fiedler[y]).then(x.cmp(&y)));

    let mut in_prefix = alloc::vec![false; n];
    let mut cut: i64 = 0;
    let mut best: Option<Ratio<u64>> = None;
    for (len, &v) in order.iter().enumerate().take(n - 1) {
        let inside = g.neighbors(v).iter().filter(|&&w| in_prefix[w]).count() as i64;
        cut += g.degree(v) as i64 - 2 * inside;
        in_prefix[v] = true;
        let smaller = (len + 1).min(n - len - 1) as u64;
        let ratio = Ratio::new(cut as u64, smaller);
        best = Some(best.map_or(ratio, |b| b.min(ratio)));
    }
    Ok(best.expect("n >= 2"))
}
