use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::{cap_error, SmallGraph};
use crate::error::Result;

/// Largest graph [`hamilton_connected_check`] searches.
pub const HAMILTON_CAP: usize = 12;
/// Largest graph [`vertex_connectivity_at_least`] checks.
pub const CONNECTIVITY_CAP: usize = 64;

/// True iff every pair of distinct vertices is joined by a Hamiltonian path.
///
/// Depth-first backtracking per pair; a `(visited set, endpoint)` state that
/// already failed is remembered and never re-expanded.
pub fn hamilton_connected_check(g: &SmallGraph) -> Result<bool> {
    let n = g.vertex_count();
    if n > HAMILTON_CAP {
        return Err(cap_error("Hamiltonian path search", n, HAMILTON_CAP, ""));
    }
    if n <= 1 {
        return Ok(true);
    }
    let nbr: Vec<u16> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(0u16, |m, &j| m | 1 << j))
        .collect();
    let full: u16 = ((1u32 << n) - 1) as u16;
    let mut dead = alloc::vec![false; (1usize << n) * n];

    struct Search<'a> {
        nbr: &'a [u16],
        full: u16,
        target: usize,
        n: usize,
        dead: &'a mut [bool],
    }

    impl Search<'_> {
        fn extend(&mut self, at: usize, visited: u16) -> bool {
            if visited == self.full {
                return at == self.target;
            }
            if at == self.target {
                return false;
            }
            let slot = visited as usize * self.n + at;
            if self.dead[slot] {
                return false;
            }
            let mut next = self.nbr[at] & !visited;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                if self.extend(w, visited | 1 << w) {
                    return true;
                }
            }
            self.dead[slot] = true;
            false
        }
    }

    for s in 0..n {
        for t in s + 1..n {
            dead.iter_mut().for_each(|x| *x = false);
            let mut search = Search {
                nbr: &nbr,
                full,
                target: t,
                n,
                dead: &mut dead,
            };
            if !search.extend(s, 1 << s) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Unit-capacity flow network with every vertex split into in/out halves.
struct SplitNetwork {
    // (to, capacity, index of reverse arc)
    arcs: Vec<Vec<(usize, i32, usize)>>,
}

impl SplitNetwork {
    fn add(&mut self, a: usize, b: usize, cap: i32) {
        let (ra, rb) = (self.arcs[b].len(), self.arcs[a].len());
        self.arcs[a].push((b, cap, ra));
        self.arcs[b].push((a, 0, rb));
    }

    /// Augments along shortest paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        while flow < limit {
            let mut prev: Vec<Option<(usize, usize)>> = alloc::vec![None; self.arcs.len()];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                if u == t {
                    break;
                }
                for (idx, &(w, cap, _)) in self.arcs[u].iter().enumerate() {
                    if cap > 0 && w != s && prev[w].is_none() {
                        prev[w] = Some((u, idx));
                        queue.push_back(w);
                    }
                }
            }
            if prev[t].is_none() {
                break;
            }
            let mut v = t;
            while let Some((u, idx)) = prev[v] {
                let rev = self.arcs[u][idx].2;
                self.arcs[u][idx].1 -= 1;
                self.arcs[v][rev].1 += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

/// True iff every pair of vertices is joined by at least `t` internally
/// vertex-disjoint paths (a direct edge counts as one path).
pub fn vertex_connectivity_at_least(g: &SmallGraph, t: usize) -> Result<bool> {
    let n = g.vertex_count();
    if n > CONNECTIVITY_CAP {
        return Err(cap_error("vertex connectivity", n, CONNECTIVITY_CAP, ""));
    }
    if t == 0 {
        return Ok(true);
    }
    for s in 0..n {
        for u in s + 1..n {
            let direct = usize::from(g.neighbors(s).binary_search(&u).is_ok());
            if direct >= t {
                continue;
            }
            let mut net = SplitNetwork {
                arcs: alloc::vec![Vec::new(); 2 * n],
            };
            let big = n as i32;
            for v in 0..n {
                let cap = if v == s || v == u { big } else { 1 };
                net.add(2 * v, 2 * v + 1, cap);
            }
            for &(a, b) in &g.edges {
                if (a, b) == (s, u) {
                    continue;
                }
                net.add(2 * a + 1, 2 * b, 1);
                net.add(2 * b + 1, 2 * a, 1);
            }
            if direct + net.max_flow(2 * s + 1, 2 * u, t - direct) < t {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{build_small_graph, enumerate_vertices};
    use crate::params::GraphParams;

    fn g(d: u32, k: u32) -> SmallGraph {
        build_small_graph(GraphParams::new(d, k).unwrap()).unwrap()
    }

    fn custom(edges: &[(usize, usize)]) -> SmallGraph {
        // six vertices borrowed from G(4,2); only the edge list matters
        let p = GraphParams::new(4, 2).unwrap();
        SmallGraph::with_edges(p, enumerate_vertices(p).unwrap(), edges.to_vec()).unwrap()
    }

    #[test]
    fn hamilton_connected_hypersimplices() {
        assert_eq!(hamilton_connected_check(&g(4, 2)), Ok(true));
        assert_eq!(hamilton_connected_check(&g(5, 2)), Ok(true));
        assert_eq!(hamilton_connected_check(&g(4, 1)), Ok(true));
        assert!(hamilton_connected_check(&g(6, 2)).is_err());
    }

    #[test]
    fn hamilton_negative_cases() {
        // 6-cycle: opposite vertices are not joined by a Hamiltonian path
        let c6 = custom(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(hamilton_connected_check(&c6), Ok(false));
        // K_{3,3} is bipartite, so same-side pairs fail
        let k33 = custom(&[
            (0, 3),
            (0, 4),
            (0, 5),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
        ]);
        assert_eq!(hamilton_connected_check(&k33), Ok(false));
    }

    #[test]
    fn connectivity_hypersimplices() {
        assert_eq!(vertex_connectivity_at_least(&g(4, 2), 3), Ok(true));
        assert_eq!(vertex_connectivity_at_least(&g(4, 2), 4), Ok(true));
        assert_eq!(vertex_connectivity_at_least(&g(4, 2), 5), Ok(false));
        assert_eq!(vertex_connectivity_at_least(&g(5, 2), 4), Ok(true));
        assert_eq!(vertex_connectivity_at_least(&g(5, 2), 6), Ok(true));
        assert_eq!(vertex_connectivity_at_least(&g(5, 2), 7), Ok(false));
        assert_eq!(vertex_connectivity_at_least(&g(6, 1), 5), Ok(true));
        assert_eq!(vertex_connectivity_at_least(&g(6, 1), 6), Ok(false));
    }

    #[test]
    fn connectivity_negative_cases() {
        let path = custom(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(vertex_connectivity_at_least(&path, 1), Ok(true));
        assert_eq!(vertex_connectivity_at_least(&path, 2), Ok(false));
        let c6 = custom(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(vertex_connectivity_at_least(&c6, 2), Ok(true));
        assert_eq!(vertex_connectivity_at_least(&c6, 3), Ok(false));
        let split = custom(&[(0, 1), (1, 2), (3, 4), (4, 5)]);
        assert_eq!(vertex_connectivity_at_least(&split, 1), Ok(false));
        assert_eq!(vertex_connectivity_at_least(&split, 0), Ok(true));
    }
}
