use alloc::vec::Vec;

use super::{cap_error, SmallGraph};
use crate::error::Result;

/// Largest graph [`max_clique`] searches.
pub const CLIQUE_CAP: usize = 128;

/// Exact clique number by branch and bound over 128-bit vertex sets.
/// Vertices are tried in decreasing degree order; a branch is cut when the
/// current clique plus every remaining candidate cannot beat the best found.
pub fn max_clique(g: &SmallGraph) -> Result<u32> {
    let n = g.vertex_count();
    if n > CLIQUE_CAP {
        return Err(cap_error("max clique", n, CLIQUE_CAP, ""));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let mut position = alloc::vec![0usize; n];
    for (pos, &v) in order.iter().enumerate() {
        position[v] = pos;
    }
    let nbr: Vec<u128> = order
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .fold(0u128, |m, &w| m | 1 << position[w])
        })
        .collect();

    fn grow(nbr: &[u128], size: u32, mut candidates: u128, best: &mut u32) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        while candidates != 0 {
            if size + candidates.count_ones() <= *best {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            grow(nbr, size + 1, candidates & nbr[v], best);
        }
    }

    let all = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let mut best = 0;
    grow(&nbr, 0, all, &mut best);
    Ok(best)
}
