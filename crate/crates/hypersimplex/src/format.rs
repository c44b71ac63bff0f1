//! Report serialization and the sample line format.

use clap::ValueEnum;
use hypersimplex_core::spectral::{ExpansionBounds, Spectrum, SpectrumEntry, SpectrumVerification};
use hypersimplex_core::{GraphParams, Vertex};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

/// How one sampled subset is written on its line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SampleStyle {
    /// Comma-separated 1-based indices, e.g. `1,4,6`.
    #[default]
    Indices,
    /// The 0/1 string, coordinate 1 leftmost.
    Bits,
}

pub fn format_sample(v: Vertex, style: SampleStyle) -> String {
    match style {
        SampleStyle::Indices => v
            .subset()
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(","),
        SampleStyle::Bits => v.to_string(),
    }
}

/// Parses one line written by `sample`: either indices or a 0/1 string.
pub fn parse_sample(p: GraphParams, line: &str) -> Result<Vertex, hypersimplex_core::Error> {
    let line = line.trim();
    if line.contains(',') || line.len() != p.d() as usize || line.bytes().any(|b| b > b'1') {
        let subset = line
            .split(',')
            .map(|s| s.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| hypersimplex_core::Error::Parse("expected comma-separated indices"))?;
        Vertex::from_subset(p, &subset)
    } else {
        Vertex::parse_in(p, line)
    }
}

/// All sample lines of a document, skipping blanks and `#` comments.
pub fn parse_samples(
    p: GraphParams,
    text: &str,
) -> Result<Vec<Vertex>, (usize, hypersimplex_core::Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| parse_sample(p, l).map_err(|e| (i + 1, e)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub d: u32,
    pub k: u32,
    pub entries: Vec<SpectrumEntry>,
    pub lower: f64,
    pub upper: f64,
    pub gap: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<SpectrumVerification>,
}

impl SpectrumReport {
    pub fn new(p: GraphParams, spectrum: &Spectrum, bounds: &ExpansionBounds) -> Self {
        SpectrumReport {
            d: p.d(),
            k: p.k(),
            entries: spectrum.entries.clone(),
            lower: *bounds.lower.numer() as f64 / *bounds.lower.denom() as f64,
            upper: bounds.upper,
            gap: bounds.gap,
            verification: None,
        }
    }
}

/// One `{t, tv}` diagnostics row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TvRow {
    pub t: u32,
    pub tv: f64,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Re-serializes a JSON document; stable for everything this crate emits.
pub fn reemit_json(document: &str) -> serde_json::Result<String> {
    let value: serde_json::Value = serde_json::from_str(document)?;
    Ok(to_json(&value))
}
