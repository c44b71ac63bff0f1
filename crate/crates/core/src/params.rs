use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported dimension: one vertex is one `u64` word.
pub const MAX_D: u32 = 64;

/// The pair `(d, k)` naming the hypersimplex graph `G(d,k)`: vertices are the
/// 0/1 vectors of length `d` with exactly `k` ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct GraphParams {
    d: u32,
    k: u32,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    d: u32,
    k: u32,
}

impl TryFrom<RawParams> for GraphParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        GraphParams::new(raw.d, raw.k)
    }
}

impl From<GraphParams> for RawParams {
    fn from(p: GraphParams) -> Self {
        RawParams { d: p.d, k: p.k }
    }
}

/// Which side of `d/2` the parameters fall on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `1 <= k <= d/2`, where distance, diameter and spectrum formulas apply directly.
    Restricted,
    /// `d/2 < k < d`; isomorphic to `G(d, d-k)` which is restricted.
    Complemented,
}

impl GraphParams {
    pub fn new(d: u32, k: u32) -> Result<Self> {
        if k == 0 || k >= d || d > MAX_D {
            return Err(Error::InvalidParams { d, k });
        }
        Ok(GraphParams { d, k })
    }

    #[inline]
    pub fn d(self) -> u32 {
        self.d
    }

    #[inline]
    pub fn k(self) -> u32 {
        self.k
    }

    pub fn regime(self) -> Regime {
        if 2 * self.k <= self.d {
            Regime::Restricted
        } else {
            Regime::Complemented
        }
    }

    /// Fails with [`Error::Regime`] unless `k <= d/2`.
    pub fn require_restricted(self) -> Result<()> {
        match self.regime() {
            Regime::Restricted => Ok(()),
            Regime::Complemented => Err(Error::Regime {
                d: self.d,
                k: self.k,
                complement: self.d - self.k,
            }),
        }
    }

    /// Mask with the low `d` bits set.
    #[inline]
    pub fn mask(self) -> u64 {
        if self.d == 64 {
            u64::MAX
        } else {
            (1u64 << self.d) - 1
        }
    }

    /// Every valid `(d, k)` with `d <= d_max` and `k <= d/2`, ordered by `d` then `k`.
    pub fn restricted_up_to(d_max: u32) -> impl Iterator<Item = GraphParams> {
        (2..=d_max.min(MAX_D)).flat_map(|d| (1..=d / 2).map(move |k| GraphParams { d, k }))
    }
}

impl fmt::Display for GraphParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.d, self.k)
    }
}

/// Binomial coefficient `C(n, r)`, `None` on `u64` overflow. `C(n, r) = 0` for `r > n`.
pub fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}
