//! Cliques and the Pascal-identity decomposition of `G(d,k)`.

use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_count, vertex_count};
use crate::params::{binomial, GraphParams};
use crate::vertex::{coordinate_bit, Vertex};

/// Largest vertex count [`decompose`] will enumerate.
pub const DECOMPOSE_CAP: u64 = 1 << 20;

/// The vertices whose first `k - 1` coordinates are one: a clique of size `d - k + 1`.
pub fn canonical_clique(p: GraphParams) -> Result<Vec<Vertex>> {
    p.require_restricted()?;
    if p.k() < 2 {
        return Err(Error::InvalidParams { d: p.d(), k: p.k() });
    }
    let prefix = (1..p.k()).fold(0u64, |acc, i| acc | coordinate_bit(p.d(), i));
    let mut clique: Vec<Vertex> = (p.k()..=p.d())
        .map(|i| Vertex::new_unchecked(p, prefix | coordinate_bit(p.d(), i)))
        .collect();
    clique.sort_unstable_by_key(|v| v.bits());
    Ok(clique)
}

/// `d - k + 1` for `2 <= k <= d/2`, `d` when the graph is complete; other
/// parameters go through the complement isomorphism.
pub fn clique_number(p: GraphParams) -> u32 {
    let k = p.k().min(p.d() - p.k());
    if k == 1 {
        p.d()
    } else {
        p.d() - k + 1
    }
}

/// `(d, k)` with `0 <= k <= d`; `k = 0` and `k = d` are single-vertex graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub d: u32,
    pub k: u32,
}

impl Shape {
    pub fn is_single_vertex(self) -> bool {
        self.k == 0 || self.k == self.d
    }

    pub fn params(self) -> Option<GraphParams> {
        GraphParams::new(self.d, self.k).ok()
    }

    pub fn vertex_count(self) -> Result<u64> {
        binomial(u64::from(self.d), u64::from(self.k)).ok_or(Error::Overflow("vertex count"))
    }

    pub fn edge_count(self) -> Result<u64> {
        match self.params() {
            Some(p) => edge_count(p),
            None => Ok(0),
        }
    }

    /// All `d`-bit words with `k` ones, ascending.
    fn words(self) -> Vec<u64> {
        match self.params() {
            Some(p) => Vertex::all(p).map(Vertex::bits).collect(),
            None if self.k == 0 => alloc::vec![0],
            None => alloc::vec![(1u64 << self.d) - 1],
        }
    }
}

/// Edges between the two halves of a decomposition:
/// `(d-1)! / ((k-1)! (d-k-1)!) = C(d-1, k-1) (d-k)`.
pub fn linking_edge_formula(p: GraphParams) -> Result<u64> {
    let ones = binomial(u64::from(p.d() - 1), u64::from(p.k() - 1))
        .ok_or(Error::Overflow("linking edges"))?;
    ones.checked_mul(u64::from(p.d() - p.k()))
        .ok_or(Error::Overflow("linking edges"))
}

/// One side of a decomposition: the vertices with a fixed pivot value, and
/// their images after deleting the pivot coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub shape: Shape,
    pub vertices: Vec<Vertex>,
    /// `relabeled[i]` is `vertices[i]` with the pivot dropped, a `shape.d`-bit word.
    pub relabeled: Vec<u64>,
}

impl Part {
    /// Checks that the drop-pivot map is a bijection onto the smaller graph's
    /// vertex set and preserves adjacency and non-adjacency pair by pair.
    pub fn relabeling_is_isomorphism(&self) -> bool {
        let mut image = self.relabeled.clone();
        image.sort_unstable();
        if image != self.shape.words() {
            return false;
        }
        let n = self.vertices.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let big = (self.vertices[i].bits() ^ self.vertices[j].bits()).count_ones() == 2;
                let small = (self.relabeled[i] ^ self.relabeled[j]).count_ones() == 2;
                big == small
            })
        })
    }
}

/// `G(d,k)` split on a pivot coordinate into `x_pivot = 1` (a copy of
/// `G(d-1,k-1)`), `x_pivot = 0` (a copy of `G(d-1,k)`) and the edges between.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub params: GraphParams,
    pub pivot: u32,
    pub ones_part: Part,
    pub zeros_part: Part,
    /// `(ones-side endpoint, zeros-side endpoint)`.
    pub linking_edges: Vec<(Vertex, Vertex)>,
}

impl Decomposition {
    /// `|E(G)| = |E(ones)| + |E(zeros)| + |links|`.
    pub fn edge_identity_holds(&self) -> Result<bool> {
        let total = edge_count(self.params)?;
        let parts = self.ones_part.shape.edge_count()? + self.zeros_part.shape.edge_count()?;
        Ok(total == parts + self.linking_edges.len() as u64)
    }
}

fn drop_coordinate(bits: u64, d: u32, pivot: u32) -> u64 {
    let low_width = d - pivot;
    let low = bits & ((1u64 << low_width) - 1);
    let high = bits >> (low_width + 1);
    (high << low_width) | low
}

pub fn decompose(p: GraphParams, pivot: u32) -> Result<Decomposition> {
    if pivot == 0 || pivot > p.d() {
        return Err(Error::InvalidPivot { pivot, d: p.d() });
    }
    let n = vertex_count(p)?;
    if n > DECOMPOSE_CAP {
        return Err(Error::SizeCap {
            what: "decomposition",
            size: n,
            cap: DECOMPOSE_CAP,
            hint: "",
        });
    }
    let pivot_bit = coordinate_bit(p.d(), pivot);
    let make_part = |shape: Shape, vertices: Vec<Vertex>| Part {
        shape,
        relabeled: vertices
            .iter()
            .map(|v| drop_coordinate(v.bits(), p.d(), pivot))
            .collect(),
        vertices,
    };
    let (ones, zeros): (Vec<Vertex>, Vec<Vertex>) =
        Vertex::all(p).partition(|v| v.bits() & pivot_bit != 0);

    // Each ones-side vertex links to the zeros side by trading its pivot one
    // for one of its d - k zeros.
    let mut linking_edges = Vec::with_capacity(ones.len() * (p.d() - p.k()) as usize);
    for &u in &ones {
        let mut z = !u.bits() & p.mask();
        while z != 0 {
            let zero = z & z.wrapping_neg();
            z ^= zero;
            linking_edges.push((u, Vertex::new_unchecked(p, u.bits() ^ pivot_bit ^ zero)));
        }
    }
    linking_edges.sort_unstable_by_key(|(u, w)| (u.bits(), w.bits()));

    Ok(Decomposition {
        params: p,
        pivot,
        ones_part: make_part(
            Shape {
                d: p.d() - 1,
                k: p.k() - 1,
            },
            ones,
        ),
        zeros_part: make_part(
            Shape {
                d: p.d() - 1,
                k: p.k(),
            },
            zeros,
        ),
        linking_edges,
    })
}

/// A node of the recursive decomposition. Leaves have no pivot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionTree {
    pub d: u32,
    pub k: u32,
    pub pivot: Option<u32>,
    pub linking_edge_count: Option<u64>,
    pub vertex_count: u64,
    pub edge_count: u64,
    /// Whether the edge-count identity held at this node (always true at leaves).
    pub identity_holds: bool,
    /// `[ones side, zeros side]` when decomposed.
    pub children: Vec<DecompositionTree>,
}

impl DecompositionTree {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn all_identities_hold(&self) -> bool {
        self.identity_holds && self.children.iter().all(Self::all_identities_hold)
    }

    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Frontier at `level`: nodes at that depth plus leaves above it.
    pub fn frontier(&self, level: usize) -> Vec<&DecompositionTree> {
        if level == 0 || self.is_leaf() {
            return alloc::vec![self];
        }
        self.children
            .iter()
            .flat_map(|c| c.frontier(level - 1))
            .collect()
    }
}

/// Repeatedly decomposes on coordinate 1 down to `depth` levels. Parts with
/// `k <= 1` (complete graphs) or a single vertex are leaves.
pub fn recursive_decomposition(p: GraphParams, depth: u32) -> Result<DecompositionTree> {
    expand(Shape { d: p.d(), k: p.k() }, depth)
}

fn expand(shape: Shape, depth: u32) -> Result<DecompositionTree> {
    let leaf = DecompositionTree {
        d: shape.d,
        k: shape.k,
        pivot: None,
        linking_edge_count: None,
        vertex_count: shape.vertex_count()?,
        edge_count: shape.edge_count()?,
        identity_holds: true,
        children: Vec::new(),
    };
    let params = match shape.params() {
        Some(p) if depth > 0 && p.k() > 1 => p,
        _ => return Ok(leaf),
    };
    let split = decompose(params, 1)?;
    let children = alloc::vec![
        expand(split.ones_part.shape, depth - 1)?,
        expand(split.zeros_part.shape, depth - 1)?,
    ];
    Ok(DecompositionTree {
        pivot: Some(1),
        linking_edge_count: Some(split.linking_edges.len() as u64),
        identity_holds: split.edge_identity_holds()?
            && leaf.vertex_count == children[0].vertex_count + children[1].vertex_count,
        children,
        ..leaf
    })
}
