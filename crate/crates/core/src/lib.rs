//! The graph of the hypersimplex `G(d,k)`: vertices are the 0/1 vectors of
//! length `d` with exactly `k` ones, two of them adjacent when they share
//! `k - 1` ones (the Johnson graph on `k`-subsets of `{1, ..., d}`).
//!
//! The crate is `no_std` with `alloc`. It contains
//!
//! * closed forms for counts, degree, distance, diameter, cliques and the
//!   adjacency spectrum, plus an explicit vertex-transitive automorphism;
//! * the Pascal-identity decomposition into smaller hypersimplex graphs;
//! * a random-walk sampler of uniform `k`-subsets with exact mixing
//!   diagnostics;
//! * [`oracle`], brute-force implementations that check all of the above on
//!   small instances without sharing code with them.

#![no_std]

extern crate alloc;

pub mod automorphism;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod params;
pub mod sampler;
pub mod spectral;
pub mod structure;
pub mod vertex;

pub use automorphism::{transitive_automorphism, IndexPermutation};
pub use error::{Error, Result};
pub use graph::{
    complement_params, degree, diameter, distance, edge_count, inner_product, is_adjacent,
    neighbors, vertex_count, ComplementMap,
};
pub use params::{binomial, GraphParams, Regime, MAX_D};
pub use sampler::{StepRule, WalkConfig, WalkState};
pub use spectral::{cheeger_bounds, closed_form_spectrum, ExpansionBounds, Spectrum};
pub use structure::{canonical_clique, clique_number, decompose, Decomposition};
pub use vertex::Vertex;
