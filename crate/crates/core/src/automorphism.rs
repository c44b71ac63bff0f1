use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vertex::{coordinate_bit, Vertex};

/// A bijection on the coordinates `{1, ..., d}`; acts on vertices by moving
/// the digit at position `i` to position `f(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexPermutation {
    // targets[i - 1] = f(i)
    targets: Vec<u32>,
}

impl IndexPermutation {
    /// `targets[i - 1]` is the image of coordinate `i`.
    pub fn new(targets: Vec<u32>) -> Result<Self> {
        let d = targets.len();
        let mut seen = 0u128;
        for &t in &targets {
            if t == 0 || t as usize > d || seen & (1 << t) != 0 {
                return Err(Error::NotAPermutation(d));
            }
            seen |= 1 << t;
        }
        Ok(IndexPermutation { targets })
    }

    pub fn identity(d: u32) -> Self {
        IndexPermutation {
            targets: (1..=d).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// `f(i)` for 1-based `i`.
    pub fn target(&self, i: u32) -> u32 {
        self.targets[i as usize - 1]
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().zip(1..).all(|(&t, i)| t == i)
    }

    pub fn compose(&self, inner: &IndexPermutation) -> IndexPermutation {
        IndexPermutation {
            targets: inner.targets.iter().map(|&t| self.target(t)).collect(),
        }
    }

    pub fn apply(&self, x: Vertex) -> Result<Vertex> {
        let d = x.params().d();
        if d as usize != self.targets.len() {
            return Err(Error::NotAPermutation(d as usize));
        }
        let mut bits = 0u64;
        for (i, &t) in (1..=d).zip(&self.targets) {
            if x.coordinate(i) {
                bits |= coordinate_bit(d, t);
            }
        }
        Ok(Vertex::new_unchecked(x.params(), bits))
    }
}

/// Builds an involutive coordinate permutation sending `x` to `y`.
///
/// Coordinates where `x` and `y` agree stay fixed. On the disagreement set,
/// the smallest remaining index with `x_i = 1` is swapped with the smallest
/// remaining index with `x_i = 0`, until the set is exhausted. Because the
/// indices with `x_i = 1` are exactly those with `y_i = 0`, every swap is a
/// transposition and the result is its own inverse.
pub fn transitive_automorphism(x: Vertex, y: Vertex) -> Result<IndexPermutation> {
    x.check_same(y)?;
    let d = x.params().d();
    let mut targets: Vec<u32> = (1..=d).collect();
    let differ = |i: &u32| x.coordinate(*i) != y.coordinate(*i);
    let x_ones = (1..=d).filter(differ).filter(|&i| x.coordinate(i));
    let x_zeros = (1..=d).filter(differ).filter(|&i| !x.coordinate(i));
    for (a, b) in x_ones.zip(x_zeros) {
        targets[a as usize - 1] = b;
        targets[b as usize - 1] = a;
    }
    Ok(IndexPermutation { targets })
}
