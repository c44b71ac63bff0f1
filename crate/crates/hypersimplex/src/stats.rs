//! Chi-square goodness-of-fit against the uniform distribution on vertices.

use hypersimplex_core::sampler::cell_counts;
use hypersimplex_core::{vertex_count, GraphParams, Vertex};
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

/// Smallest expected count per cell the chi-square approximation tolerates.
pub const MIN_EXPECTED_PER_CELL: f64 = 5.0;

#[derive(Debug, Error, PartialEq)]
pub enum UniformityError {
    #[error(
        "{samples} samples over {cells} cells gives {expected:.2} expected per cell; \
         need at least {required} samples"
    )]
    Undersampled {
        samples: u64,
        cells: u64,
        expected: f64,
        required: u64,
    },
    #[error(transparent)]
    Graph(#[from] hypersimplex_core::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniformityReport {
    pub d: u32,
    pub k: u32,
    pub samples: u64,
    pub cells: u64,
    pub statistic: f64,
    pub degrees_of_freedom: u64,
    pub p_value: f64,
    pub significance: f64,
    pub pass: bool,
}

/// Pearson's statistic over all `C(d,k)` vertices with `C(d,k) - 1` degrees of
/// freedom; passes when the p-value exceeds `significance`.
pub fn uniformity_test(
    p: GraphParams,
    samples: &[Vertex],
    significance: f64,
) -> Result<UniformityReport, UniformityError> {
    let cells = vertex_count(p)?;
    let n = samples.len() as u64;
    let expected = n as f64 / cells as f64;
    if expected < MIN_EXPECTED_PER_CELL {
        return Err(UniformityError::Undersampled {
            samples: n,
            cells,
            expected,
            required: (MIN_EXPECTED_PER_CELL * cells as f64).ceil() as u64,
        });
    }
    let counts = cell_counts(p, samples)?;
    let statistic: f64 = counts
        .iter()
        .map(|&c| (c as f64 - expected).powi(2) / expected)
        .sum();
    let dof = cells - 1;
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64)
            .expect("positive degrees of freedom")
            .sf(statistic)
    };
    Ok(UniformityReport {
        d: p.d(),
        k: p.k(),
        samples: n,
        cells,
        statistic,
        degrees_of_freedom: dof,
        p_value,
        significance,
        pass: p_value > significance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: u32, k: u32) -> GraphParams {
        GraphParams::new(d, k).unwrap()
    }

    #[test]
    fn perfectly_even_counts() {
        let q = p(5, 2);
        let samples: Vec<Vertex> = (0..7).flat_map(|_| Vertex::all(q)).collect();
        let r = uniformity_test(q, &samples, 0.001).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.degrees_of_freedom, 9);
        assert!((r.p_value - 1.0).abs() < 1e-12);
        assert!(r.pass);
    }

    #[test]
    fn identical_samples_fail() {
        let q = p(5, 2);
        let samples = vec![Vertex::canonical(q); 10_000];
        let r = uniformity_test(q, &samples, 0.001).unwrap();
        assert!(r.p_value < 1e-100);
        assert!(!r.pass);
    }

    #[test]
    fn undersampled_refused() {
        let q = p(6, 3);
        let err = uniformity_test(q, &vec![Vertex::canonical(q); 50], 0.001).unwrap_err();
        assert!(matches!(
            err,
            UniformityError::Undersampled { required: 100, .. }
        ));
        assert!(err.to_string().contains("need at least 100 samples"));
    }

    #[test]
    fn known_statistic() {
        // counts 8 and 4 over two cells: expected 6, statistic 4/3, sf(4/3; 1 dof) = 0.2482
        let q = p(2, 1);
        let a: Vertex = "10".parse().unwrap();
        let b: Vertex = "01".parse().unwrap();
        let r = uniformity_test(q, &[a, a, a, b, a, a, b, b, a, a, a, b], 0.05);
        let r = r.unwrap();
        assert_eq!(r.statistic, 4.0 / 3.0);
        assert!((r.p_value - 0.248_213).abs() < 1e-5, "{}", r.p_value);
    }
}
