use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::params::GraphParams;

/// A vertex of `G(d,k)`: a `d`-bit word with exactly `k` ones.
///
/// Coordinate 1 is the most significant of the `d` used bits, so the textual
/// form reads left to right as `x_1 x_2 ... x_d` and ascending numeric order of
/// the word is the canonical vertex order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    bits: u64,
    params: GraphParams,
}

impl Vertex {
    pub fn new(params: GraphParams, bits: u64) -> Result<Self> {
        if bits & !params.mask() != 0 || bits.count_ones() != params.k() {
            return Err(Error::InvalidVertex {
                bits,
                d: params.d(),
                k: params.k(),
            });
        }
        Ok(Vertex { bits, params })
    }

    #[inline]
    pub(crate) fn new_unchecked(params: GraphParams, bits: u64) -> Self {
        debug_assert!(bits & !params.mask() == 0 && bits.count_ones() == params.k());
        Vertex { bits, params }
    }

    /// The vertex whose first `k` coordinates are one.
    pub fn canonical(params: GraphParams) -> Self {
        let low = (1u64 << params.k()) - 1;
        Vertex::new_unchecked(params, low << (params.d() - params.k()))
    }

    /// Builds the vertex whose one-coordinates are the given 1-based indices.
    pub fn from_subset(params: GraphParams, subset: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in subset {
            if i == 0 || i > params.d() {
                return Err(Error::Parse("subset index out of range"));
            }
            bits |= coordinate_bit(params.d(), i);
        }
        if subset.len() != params.k() as usize {
            return Err(Error::Parse("subset has the wrong size"));
        }
        Vertex::new(params, bits)
    }

    /// Parses the 0/1 string form, requiring it to match `params`.
    pub fn parse_in(params: GraphParams, s: &str) -> Result<Self> {
        let v: Vertex = s.parse()?;
        if v.params != params {
            return Err(Error::ParamMismatch(
                v.params.d(),
                v.params.k(),
                params.d(),
                params.k(),
            ));
        }
        Ok(v)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn params(self) -> GraphParams {
        self.params
    }

    /// Value of coordinate `i` (1-based).
    #[inline]
    pub fn coordinate(self, i: u32) -> bool {
        self.bits & coordinate_bit(self.params.d(), i) != 0
    }

    /// The `k`-subset of `{1, ..., d}` this vertex encodes, ascending.
    pub fn subset(self) -> Vec<u32> {
        (1..=self.params.d())
            .filter(|&i| self.coordinate(i))
            .collect()
    }

    pub(crate) fn check_same(self, other: Vertex) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamMismatch(
                self.params.d(),
                self.params.k(),
                other.params.d(),
                other.params.k(),
            ));
        }
        Ok(())
    }

    /// All vertices of `G(d,k)` in canonical (ascending) order.
    pub fn all(params: GraphParams) -> VertexIter {
        let first = (1u64 << params.k()) - 1;
        VertexIter {
            params,
            next: Some(first),
            last: first << (params.d() - params.k()),
        }
    }
}

/// Bit of coordinate `i` (1-based) in a `d`-bit word.
#[inline]
pub(crate) fn coordinate_bit(d: u32, i: u32) -> u64 {
    1u64 << (d - i)
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::with_capacity(self.params.d() as usize);
        for i in 1..=self.params.d() {
            s.push(if self.coordinate(i) { '1' } else { '0' });
        }
        f.write_str(&s)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Infers `d` from the length and `k` from the number of ones.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > crate::MAX_D as usize {
            return Err(Error::Parse("length must be between 1 and 64"));
        }
        let mut bits = 0u64;
        for c in s.bytes() {
            bits = (bits << 1)
                | match c {
                    b'0' => 0,
                    b'1' => 1,
                    _ => return Err(Error::Parse("only '0' and '1' are allowed")),
                };
        }
        let params = GraphParams::new(s.len() as u32, bits.count_ones())?;
        Ok(Vertex::new_unchecked(params, bits))
    }
}

/// Iterator over the vertices of `G(d,k)` in ascending bit order (Gosper's hack).
#[derive(Debug, Clone)]
pub struct VertexIter {
    params: GraphParams,
    next: Option<u64>,
    last: u64,
}

impl Iterator for VertexIter {
    type Item = Vertex;

    fn next(&mut self) -> Option<Vertex> {
        let x = self.next?;
        self.next = if x == self.last {
            None
        } else {
            let c = x & x.wrapping_neg();
            let r = x + c;
            Some((((r ^ x) >> 2) / c) | r)
        };
        Some(Vertex::new_unchecked(self.params, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn p(d: u32, k: u32) -> GraphParams {
        GraphParams::new(d, k).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let v: Vertex = "110101101000".parse().unwrap();
        assert_eq!(v.params(), p(12, 6));
        assert_eq!(v.to_string(), "110101101000");
        assert!(v.coordinate(1) && v.coordinate(2) && !v.coordinate(3));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("11020".parse::<Vertex>().is_err());
        assert!("".parse::<Vertex>().is_err());
        assert!("00000".parse::<Vertex>().is_err());
        assert!("11111".parse::<Vertex>().is_err());
        assert!(Vertex::parse_in(p(5, 2), "1100").is_err());
        assert!(Vertex::parse_in(p(5, 2), "11100").is_err());
        assert!(Vertex::parse_in(p(5, 2), "01100").is_ok());
    }

    #[test]
    fn new_checks_popcount_and_width() {
        assert!(Vertex::new(p(5, 2), 0b11000).is_ok());
        assert!(Vertex::new(p(5, 2), 0b11100).is_err());
        assert!(Vertex::new(p(5, 2), 0b1_00001).is_err());
    }

    #[test]
    fn subsets() {
        let v: Vertex = "11000".parse().unwrap();
        assert_eq!(v.subset(), vec![1, 2]);
        let w: Vertex = "00110".parse().unwrap();
        assert_eq!(w.subset(), vec![3, 4]);
        assert_eq!(Vertex::from_subset(p(5, 2), &[3, 4]).unwrap(), w);
        assert!(Vertex::from_subset(p(5, 2), &[0, 4]).is_err());
        assert!(Vertex::from_subset(p(5, 2), &[3]).is_err());
    }

    #[test]
    fn subset_round_trip_g63() {
        let params = p(6, 3);
        for v in Vertex::all(params) {
            assert_eq!(Vertex::from_subset(params, &v.subset()).unwrap(), v);
        }
    }

    #[test]
    fn canonical_vertex() {
        assert_eq!(Vertex::canonical(p(5, 2)).to_string(), "11000");
        assert_eq!(Vertex::canonical(p(64, 63)).bits(), u64::MAX << 1);
    }

    #[test]
    fn enumeration_is_ascending_and_complete() {
        let all: Vec<u64> = Vertex::all(p(5, 2)).map(Vertex::bits).collect();
        assert_eq!(all.len(), 10);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], 0b00011);
        assert_eq!(all[9], 0b11000);
        assert_eq!(Vertex::all(p(64, 63)).count(), 64);
        assert_eq!(Vertex::all(p(64, 1)).count(), 64);
    }
}
