//! Brute-force reference implementations.
//!
//! Everything here is built from the definition of `G(d,k)` (all `d`-bit
//! words with `k` ones, joined when they differ in exactly two coordinates)
//! and never calls the closed-form modules. The only shared piece is the
//! [`Vertex`] type.

mod clique;
mod connectivity;
mod expansion;

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::params::GraphParams;
use crate::vertex::Vertex;

pub use clique::{max_clique, CLIQUE_CAP};
pub use connectivity::{
    hamilton_connected_check, vertex_connectivity_at_least, CONNECTIVITY_CAP, HAMILTON_CAP,
};
pub use expansion::{
    exact_expansion, sweep_expansion_upper_bound, ExpansionReport, EXACT_EXPANSION_CAP,
};

/// Most vertices [`enumerate_vertices`] will list.
pub const ENUMERATION_CAP: usize = 1 << 20;
/// Most vertices [`build_small_graph`] will connect.
pub const EDGE_CAP: usize = 4096;

/// An explicit graph with vertices in ascending bit order and each edge listed
/// once as `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    pub params: GraphParams,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl SmallGraph {
    /// A graph on the given vertices with arbitrary edges; used to feed the
    /// checkers graphs that are not hypersimplices.
    pub fn with_edges(
        params: GraphParams,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut adjacency = alloc::vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Parse("edge endpoint out of range or self-loop"));
            }
            let (a, b) = (a.min(b), a.max(b));
            if adjacency[a].contains(&b) {
                continue;
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            normalized.push((a, b));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(SmallGraph {
            params,
            vertices,
            edges: normalized,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.vertices
            .binary_search_by_key(&v.bits(), |w| w.bits())
            .ok()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }
}

fn cap_error(what: &'static str, size: usize, cap: usize, hint: &'static str) -> Error {
    Error::SizeCap {
        what,
        size: size as u64,
        cap: cap as u64,
        hint,
    }
}

/// All vertices of `G(d,k)` by choosing `k` of the `d` coordinates, sorted.
pub fn enumerate_vertices(p: GraphParams) -> Result<Vec<Vertex>> {
    fn choose(d: u32, from: u32, left: u32, acc: u64, out: &mut Vec<u64>, cap: usize) -> bool {
        if left == 0 {
            out.push(acc);
            return out.len() <= cap;
        }
        // coordinates are 1-based, coordinate i is bit d - i
        (from..=d + 1 - left).all(|i| choose(d, i + 1, left - 1, acc | 1 << (d - i), out, cap))
    }
    let mut words = Vec::new();
    if !choose(p.d(), 1, p.k(), 0, &mut words, ENUMERATION_CAP) {
        return Err(cap_error(
            "vertex enumeration",
            words.len(),
            ENUMERATION_CAP,
            "",
        ));
    }
    words.sort_unstable();
    words.into_iter().map(|w| Vertex::new(p, w)).collect()
}

/// `G(d,k)` as an explicit graph: vertices by enumeration, edges between
/// words at Hamming distance 2.
pub fn build_small_graph(p: GraphParams) -> Result<SmallGraph> {
    let vertices = enumerate_vertices(p)?;
    let n = vertices.len();
    if n > EDGE_CAP {
        return Err(cap_error("edge construction", n, EDGE_CAP, ""));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (vertices[i].bits() ^ vertices[j].bits()).count_ones() == 2 {
                edges.push((i, j));
            }
        }
    }
    SmallGraph::with_edges(p, vertices, edges)
}

/// Breadth-first distances from `source`, indexed like `g.vertices`;
/// unreachable vertices get `u32::MAX`.
pub fn bfs_distances(g: &SmallGraph, source: Vertex) -> Result<Vec<u32>> {
    let s = g.index_of(source).ok_or(Error::InvalidVertex {
        bits: source.bits(),
        d: g.params.d(),
        k: g.params.k(),
    })?;
    Ok(bfs_from(g.adjacency(), s))
}

pub(crate) fn bfs_from(adjacency: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut dist = alloc::vec![u32::MAX; adjacency.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Largest finite distance between any two vertices.
pub fn exact_diameter(g: &SmallGraph) -> u32 {
    (0..g.vertex_count())
        .flat_map(|s| bfs_from(g.adjacency(), s))
        .filter(|&x| x != u32::MAX)
        .max()
        .unwrap_or(0)
}

/// Intersection numbers of a distance-regular graph from BFS distances.
///
/// Entry `[i][j]` is the number of neighbours `z` of `y` with `dist(x, z) = j`,
/// for any pair with `dist(x, y) = i`. Returns `None` as soon as two pairs at
/// the same distance disagree, i.e. when the graph is not distance-regular.
pub fn intersection_numbers(g: &SmallGraph) -> Option<Vec<Vec<u64>>> {
    let n = g.vertex_count();
    let dist: Vec<Vec<u32>> = (0..n).map(|s| bfs_from(g.adjacency(), s)).collect();
    if dist.iter().flatten().any(|&x| x == u32::MAX) {
        return None;
    }
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0) as usize;
    let mut table: Vec<Option<Vec<u64>>> = alloc::vec![None; diameter + 1];
    for x in 0..n {
        for y in 0..n {
            let i = dist[x][y] as usize;
            let mut row = alloc::vec![0u64; diameter + 1];
            for &z in g.neighbors(y) {
                row[dist[x][z] as usize] += 1;
            }
            match &table[i] {
                None => table[i] = Some(row),
                Some(seen) if *seen != row => return None,
                Some(_) => {}
            }
        }
    }
    table.into_iter().collect()
}

/// Uniform `k`-subset by a partial Fisher-Yates shuffle of the coordinates;
/// the statistical baseline for the walk sampler.
pub fn direct_sample<R: Rng + ?Sized>(p: GraphParams, rng: &mut R) -> Vertex {
    let d = p.d() as usize;
    let mut coords: Vec<u32> = (1..=p.d()).collect();
    for i in 0..p.k() as usize {
        let j = rng.random_range(i..d);
        coords.swap(i, j);
    }
    let bits = coords[..p.k() as usize]
        .iter()
        .fold(0u64, |acc, &c| acc | 1 << (p.d() - c));
    Vertex::new(p, bits).expect("k distinct coordinates")
}
