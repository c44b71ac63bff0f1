//! Command-line surface and report formats for hypersimplex graphs, on top of
//! the `no_std` [`hypersimplex_core`] crate.

pub mod cli;
pub mod format;
pub mod stats;
pub mod verify;

pub use hypersimplex_core as core;
