use alloc::string::String;

use thiserror::Error;

/// Everything that can go wrong inside the core crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters d={d}, k={k}: need 1 <= k < d <= {max_d}", max_d = crate::MAX_D)]
    InvalidParams { d: u32, k: u32 },

    #[error(
        "G({d},{k}) is outside the regime 1 <= k <= d/2; map it through the complement \
         isomorphism to G({d},{complement}) first"
    )]
    Regime { d: u32, k: u32, complement: u32 },

    #[error("vertices belong to different graphs: G({0},{1}) vs G({2},{3})")]
    ParamMismatch(u32, u32, u32, u32),

    #[error("bit pattern {bits:#x} is not a vertex of G({d},{k})")]
    InvalidVertex { bits: u64, d: u32, k: u32 },

    #[error("cannot parse vertex: {0}")]
    Parse(&'static str),

    #[error("index map is not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("{what} has {size} vertices, above the cap of {cap}{hint}")]
    SizeCap {
        what: &'static str,
        size: u64,
        cap: u64,
        hint: &'static str,
    },

    #[error("pivot coordinate {pivot} is outside 1..={d}")]
    InvalidPivot { pivot: u32, d: u32 },

    #[error("rejection sampling drew {0} pairs without a move; the random source is broken")]
    PathologicalRng(u64),

    #[error("the non-lazy walk on G({d},{k}) is periodic and never mixes; use the lazy walk")]
    NoSpectralGap { d: u32, k: u32 },

    #[error("eigenvalue cluster near {expected} does not match: {detail}")]
    SpectrumMismatch { expected: i64, detail: String },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
