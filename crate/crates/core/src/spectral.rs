//! Spectrum of the adjacency matrix, Cheeger bounds on edge expansion and the
//! random walk's spectral gap.

use alloc::format;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{degree, vertex_count};
use crate::params::{binomial, GraphParams};
use crate::vertex::Vertex;

/// Largest vertex count for which dense matrices are built.
pub const MATRIX_CAP: u64 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub j: u32,
    pub eigenvalue: i64,
    pub multiplicity: u64,
}

/// Distinct adjacency eigenvalues of `G(d,k)`, strictly decreasing in `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub params: GraphParams,
    pub entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn dimension(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// `sum m_j lambda_j`, the trace of the adjacency matrix.
    pub fn trace(&self) -> i128 {
        self.entries
            .iter()
            .map(|e| i128::from(e.eigenvalue) * i128::from(e.multiplicity))
            .sum()
    }

    pub fn largest(&self) -> i64 {
        self.entries[0].eigenvalue
    }

    /// `lambda_1`, the second largest eigenvalue.
    pub fn second(&self) -> i64 {
        self.entries[1].eigenvalue
    }

    pub fn smallest(&self) -> i64 {
        self.entries[self.entries.len() - 1].eigenvalue
    }
}

/// `lambda_j = (k-j)(d-k-j) - j` with multiplicity `C(d,j) - C(d,j-1)`, for
/// `j = 0, ..., k`.
pub fn closed_form_spectrum(p: GraphParams) -> Result<Spectrum> {
    p.require_restricted()?;
    let (d, k) = (i64::from(p.d()), i64::from(p.k()));
    let choose = |j: i64| -> Result<u64> {
        if j < 0 {
            return Ok(0);
        }
        binomial(d as u64, j as u64).ok_or(Error::Overflow("eigenvalue multiplicity"))
    };
    let entries = (0..=k)
        .map(|j| {
            Ok(SpectrumEntry {
                j: j as u32,
                eigenvalue: (k - j) * (d - k - j) - j,
                multiplicity: choose(j)? - choose(j - 1)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum { params: p, entries })
}

pub(crate) fn check_matrix_cap(p: GraphParams, cap: u64) -> Result<usize> {
    let n = vertex_count(p).unwrap_or(u64::MAX);
    if n > cap {
        return Err(Error::SizeCap {
            what: "adjacency matrix",
            size: n,
            cap,
            hint: "",
        });
    }
    Ok(n as usize)
}

/// Dense 0/1 adjacency matrix, rows and columns in canonical vertex order.
pub fn adjacency_matrix(p: GraphParams) -> Result<DMatrix<f64>> {
    adjacency_matrix_capped(p, MATRIX_CAP)
}

pub fn adjacency_matrix_capped(p: GraphParams, cap: u64) -> Result<DMatrix<f64>> {
    let n = check_matrix_cap(p, cap)?;
    let vertices: Vec<Vertex> = Vertex::all(p).collect();
    let adjacent_ip = p.k() - 1;
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let shared = (vertices[i].bits() & vertices[j].bits()).count_ones();
        if shared == adjacent_ip {
            1.0
        } else {
            0.0
        }
    }))
}

/// One matched eigenvalue cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterMatch {
    pub eigenvalue: i64,
    pub multiplicity: u64,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumVerification {
    pub clusters: Vec<ClusterMatch>,
    pub max_deviation: f64,
}

/// Eigensolves the explicit adjacency matrix and matches the result against
/// the closed form: each numeric eigenvalue within `tol` of its predicted
/// value, multiplicities equal after clustering sorted values at gaps larger
/// than `10 * tol`.
pub fn verify_spectrum(p: GraphParams, tol: f64) -> Result<SpectrumVerification> {
    let expected = closed_form_spectrum(p)?;
    let matrix = adjacency_matrix(p)?;
    let mut numeric: Vec<f64> = matrix.symmetric_eigenvalues().iter().copied().collect();
    numeric.sort_by(|a, b| b.total_cmp(a));

    let mut clusters: Vec<&[f64]> = Vec::new();
    let mut start = 0;
    for i in 1..=numeric.len() {
        if i == numeric.len() || numeric[i - 1] - numeric[i] > 10.0 * tol {
            clusters.push(&numeric[start..i]);
            start = i;
        }
    }

    if clusters.len() != expected.entries.len() {
        let first_unmatched = expected
            .entries
            .iter()
            .zip(&clusters)
            .find(|(e, c)| c.len() as u64 != e.multiplicity)
            .map_or(expected.smallest(), |(e, _)| e.eigenvalue);
        return Err(Error::SpectrumMismatch {
            expected: first_unmatched,
            detail: format!(
                "found {} eigenvalue clusters, expected {}",
                clusters.len(),
                expected.entries.len()
            ),
        });
    }

    let mut matches = Vec::with_capacity(clusters.len());
    for (entry, cluster) in expected.entries.iter().zip(clusters) {
        let target = entry.eigenvalue as f64;
        let dev = cluster
            .iter()
            .map(|x| libm::fabs(x - target))
            .fold(0.0, f64::max);
        if cluster.len() as u64 != entry.multiplicity {
            return Err(Error::SpectrumMismatch {
                expected: entry.eigenvalue,
                detail: format!(
                    "multiplicity {} found, {} expected",
                    cluster.len(),
                    entry.multiplicity
                ),
            });
        }
        if dev > tol {
            return Err(Error::SpectrumMismatch {
                expected: entry.eigenvalue,
                detail: format!("deviation {dev:e} exceeds tolerance {tol:e}"),
            });
        }
        matches.push(ClusterMatch {
            eigenvalue: entry.eigenvalue,
            multiplicity: entry.multiplicity,
            max_deviation: dev,
        });
    }
    let max_deviation = matches.iter().map(|m| m.max_deviation).fold(0.0, f64::max);
    Ok(SpectrumVerification {
        clusters: matches,
        max_deviation,
    })
}

/// Cheeger sandwich `(r - lambda_1)/2 <= chi <= sqrt(2 r (r - lambda_1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionBounds {
    pub degree: u64,
    /// `r - lambda_1`.
    pub gap: u64,
    pub lower: Ratio<u64>,
    pub upper: f64,
}

impl ExpansionBounds {
    /// `upper^2 = 2 r (r - lambda_1)` without rounding.
    pub fn upper_squared(&self) -> u128 {
        2 * u128::from(self.degree) * u128::from(self.gap)
    }
}

pub fn cheeger_bounds(p: GraphParams) -> Result<ExpansionBounds> {
    let spectrum = closed_form_spectrum(p)?;
    let r = degree(p);
    let gap = (r as i64 - spectrum.second()) as u64;
    let bounds = ExpansionBounds {
        degree: r,
        gap,
        lower: Ratio::new(gap, 2),
        upper: 0.0,
    };
    Ok(ExpansionBounds {
        upper: libm::sqrt(bounds.upper_squared() as f64),
        ..bounds
    })
}

/// Spectral gap of the simple random walk's transition matrix `A / r`.
///
/// Non-lazy: `1 - max(|lambda_1|, |lambda_min|) / r`. Lazy (stay put with
/// probability 1/2): the transition eigenvalues become `(1 + lambda_j / r) / 2`,
/// all non-negative, and the gap is `(1 - lambda_1 / r) / 2`.
pub fn spectral_gap(p: GraphParams, lazy: bool) -> Result<f64> {
    let s = closed_form_spectrum(p)?;
    let r = s.largest() as f64;
    let l1 = s.second() as f64;
    if lazy {
        Ok((1.0 - l1 / r) / 2.0)
    } else {
        let worst = libm::fabs(l1).max(libm::fabs(s.smallest() as f64));
        Ok(1.0 - worst / r)
    }
}
