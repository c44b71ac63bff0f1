//! Closed-form structure of `G(d,k)`: counts, adjacency, neighbourhoods,
//! distances and the complement isomorphism.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::params::{binomial, GraphParams};
use crate::vertex::Vertex;

/// `C(d, k)`.
pub fn vertex_count(p: GraphParams) -> Result<u64> {
    binomial(u64::from(p.d()), u64::from(p.k())).ok_or(Error::Overflow("vertex count"))
}

/// Number of shared one-coordinates, `x . y`.
pub fn inner_product(x: Vertex, y: Vertex) -> Result<u32> {
    x.check_same(y)?;
    Ok((x.bits() & y.bits()).count_ones())
}

/// Two vertices are adjacent iff they share exactly `k - 1` ones.
pub fn is_adjacent(x: Vertex, y: Vertex) -> Result<bool> {
    Ok(inner_product(x, y)? + 1 == x.params().k())
}

/// Every vertex reachable by moving one 1 to a 0 position, ascending.
pub fn neighbors(x: Vertex) -> Vec<Vertex> {
    let p = x.params();
    let ones = x.bits();
    let zeros = !ones & p.mask();
    let mut out = Vec::with_capacity((p.k() * (p.d() - p.k())) as usize);
    let mut o = ones;
    while o != 0 {
        let one = o & o.wrapping_neg();
        o ^= one;
        let mut z = zeros;
        while z != 0 {
            let zero = z & z.wrapping_neg();
            z ^= zero;
            out.push(Vertex::new_unchecked(p, ones ^ one ^ zero));
        }
    }
    out.sort_unstable_by_key(|v| v.bits());
    out
}

/// The common degree `k(d-k)`.
pub fn degree(p: GraphParams) -> u64 {
    u64::from(p.k()) * u64::from(p.d() - p.k())
}

/// `d! / (2 (k-1)! (d-k-1)!)`, evaluated as `C(d,k) k (d-k) / 2` in 128-bit
/// arithmetic.
pub fn edge_count(p: GraphParams) -> Result<u64> {
    let n = u128::from(vertex_count(p)?);
    let twice = n * u128::from(degree(p));
    u64::try_from(twice / 2).map_err(|_| Error::Overflow("edge count"))
}

/// Graph distance `k - x . y`. Only defined here for `k <= d/2`.
pub fn distance(x: Vertex, y: Vertex) -> Result<u32> {
    x.params().require_restricted()?;
    Ok(x.params().k() - inner_product(x, y)?)
}

/// Diameter `k`, for `k <= d/2`.
pub fn diameter(p: GraphParams) -> Result<u32> {
    p.require_restricted()?;
    Ok(p.k())
}

/// The isomorphism `G(d,k) -> G(d,d-k)` given by flipping every coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplementMap {
    source: GraphParams,
    target: GraphParams,
}

impl ComplementMap {
    pub fn source(&self) -> GraphParams {
        self.source
    }

    pub fn target(&self) -> GraphParams {
        self.target
    }

    pub fn apply(&self, v: Vertex) -> Result<Vertex> {
        if v.params() != self.source {
            return Err(Error::ParamMismatch(
                v.params().d(),
                v.params().k(),
                self.source.d(),
                self.source.k(),
            ));
        }
        Ok(Vertex::new_unchecked(
            self.target,
            !v.bits() & self.target.mask(),
        ))
    }
}

/// Returns `(d, d-k)` together with the complement vertex map.
pub fn complement_params(p: GraphParams) -> (GraphParams, ComplementMap) {
    let target = GraphParams::new(p.d(), p.d() - p.k()).expect("d-k is in 1..d");
    (target, ComplementMap { source: p, target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(d: u32, k: u32) -> GraphParams {
        GraphParams::new(d, k).unwrap()
    }
    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    /// Adjacency straight from the polytope definition: `x` and `y` are
    /// non-adjacent iff their midpoint is also the midpoint of another vertex
    /// pair `{u, w}`.
    fn midpoint_decomposable(x: Vertex, y: Vertex) -> bool {
        let all: Vec<Vertex> = Vertex::all(x.params()).collect();
        let d = x.params().d();
        let sum = |a: Vertex, b: Vertex| -> Vec<u32> {
            (1..=d)
                .map(|i| u32::from(a.coordinate(i)) + u32::from(b.coordinate(i)))
                .collect()
        };
        let target = sum(x, y);
        all.iter().any(|&u| {
            all.iter().any(|&w| {
                let other_pair = !((u == x && w == y) || (u == y && w == x));
                other_pair && sum(u, w) == target
            })
        })
    }

    #[test]
    fn counts() {
        assert_eq!(vertex_count(p(5, 2)), Ok(10));
        assert_eq!(vertex_count(p(4, 1)), Ok(4));
        assert_eq!(vertex_count(p(12, 5)), Ok(792));
        assert_eq!(degree(p(5, 2)), 6);
        assert_eq!(degree(p(17, 1)), 16);
        assert_eq!(degree(p(9, 4)), 20);
        assert_eq!(edge_count(p(5, 2)), Ok(30));
        assert_eq!(edge_count(p(4, 2)), Ok(12));
        assert_eq!(edge_count(p(6, 3)), Ok(90));
    }

    #[test]
    fn vertex_count_matches_word_enumeration() {
        let words = (0u32..1 << 12).filter(|w| w.count_ones() == 5).count();
        assert_eq!(vertex_count(p(12, 5)), Ok(words as u64));
    }

    #[test]
    fn edge_count_overflow_is_reported() {
        assert_eq!(edge_count(p(64, 32)), Err(Error::Overflow("edge count")));
        assert_eq!(vertex_count(p(64, 32)), Ok(1_832_624_140_942_590_534));
    }

    #[test]
    fn edge_count_matches_factorial_formula() {
        // d! / (2 (k-1)! (d-k-1)!) with exact u128 factorials for d <= 30.
        let fact = |n: u32| (1..=u128::from(n)).product::<u128>();
        for d in 2..=30 {
            for k in 1..d {
                let expected = fact(d) / (2 * fact(k - 1) * fact(d - k - 1));
                assert_eq!(u128::from(edge_count(p(d, k)).unwrap()), expected);
            }
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product(v("11000"), v("11000")), Ok(2));
        assert_eq!(inner_product(v("11000"), v("00110")), Ok(0));
        // coordinate-wise product sum
        let (x, y) = ("110101101000", "100110010110");
        let direct = x
            .bytes()
            .zip(y.bytes())
            .filter(|&(a, b)| a == b'1' && b == b'1')
            .count();
        assert_eq!(direct, 2);
        assert_eq!(inner_product(v(x), v(y)), Ok(2));
        assert!(matches!(
            inner_product(v("11000"), v("110000")),
            Err(Error::ParamMismatch(..))
        ));
    }

    #[test]
    fn adjacency() {
        assert_eq!(is_adjacent(v("11000"), v("10100")), Ok(true));
        assert_eq!(is_adjacent(v("11000"), v("00110")), Ok(false));
        assert_eq!(is_adjacent(v("11000"), v("11000")), Ok(false));
        assert!(is_adjacent(v("1100"), v("11000")).is_err());
    }

    #[test]
    fn adjacency_matches_midpoint_definition_on_g42() {
        let all: Vec<Vertex> = Vertex::all(p(4, 2)).collect();
        let mut pairs = 0;
        for (i, &x) in all.iter().enumerate() {
            for &y in &all[i + 1..] {
                assert_eq!(is_adjacent(x, y).unwrap(), !midpoint_decomposable(x, y));
                pairs += 1;
            }
        }
        assert_eq!(pairs, 15);
    }

    #[test]
    fn neighbor_lists() {
        let n: Vec<_> = neighbors(v("110"))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(n, ["011", "101"]);
        for x in Vertex::all(p(6, 2)) {
            assert_eq!(neighbors(x).len(), 8);
        }
        let x = v("11000");
        let filtered: Vec<Vertex> = Vertex::all(x.params())
            .filter(|&y| is_adjacent(x, y).unwrap())
            .collect();
        assert_eq!(neighbors(x), filtered);
        assert_eq!(filtered.len(), 6);
    }

    #[test]
    fn distances_and_regime() {
        assert_eq!(distance(v("11000"), v("11000")), Ok(0));
        assert_eq!(distance(v("11000"), v("00110")), Ok(2));
        assert_eq!(diameter(p(9, 1)), Ok(1));
        assert_eq!(diameter(p(6, 3)), Ok(3));
        assert_eq!(diameter(p(7, 2)), Ok(2));
        assert!(matches!(
            distance(v("11100"), v("00111")),
            Err(Error::Regime { complement: 2, .. })
        ));
        assert!(matches!(diameter(p(5, 4)), Err(Error::Regime { .. })));
    }

    #[test]
    fn complement() {
        let (q, map) = complement_params(p(5, 3));
        assert_eq!(q, p(5, 2));
        assert_eq!(map.apply(v("11100")).unwrap().to_string(), "00011");
        assert!(map.apply(v("11000")).is_err());
        let (q, _) = complement_params(p(6, 3));
        assert_eq!(q, p(6, 3));
    }

    #[test]
    fn complement_preserves_edges_of_g53() {
        let (_, map) = complement_params(p(5, 3));
        let all: Vec<Vertex> = Vertex::all(p(5, 3)).collect();
        let mut edges = 0;
        for (i, &x) in all.iter().enumerate() {
            for &y in &all[i + 1..] {
                if is_adjacent(x, y).unwrap() {
                    edges += 1;
                    assert!(is_adjacent(map.apply(x).unwrap(), map.apply(y).unwrap()).unwrap());
                }
            }
        }
        assert_eq!(edges, 30);
    }
}
