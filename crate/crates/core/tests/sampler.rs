//! Statistical behaviour of the walk sampler.

use hypersimplex_core::oracle::direct_sample;
use hypersimplex_core::sampler::{cell_counts, sample_many, tv_evolution};
use hypersimplex_core::{neighbors, GraphParams, StepRule, Vertex, WalkConfig, WalkState};
use rand::SeedableRng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn p(d: u32, k: u32) -> GraphParams {
    GraphParams::new(d, k).unwrap()
}

/// Neighbour index hit by one step from `x`, repeated `n` times.
fn single_step_counts(x: Vertex, rule: StepRule, n: u32, seed: u64) -> Vec<u64> {
    let nbrs = neighbors(x);
    let mut counts = vec![0u64; nbrs.len()];
    let mut w = WalkState::new(x, seed, 0);
    for _ in 0..n {
        w.current = x;
        w.step(rule, false).unwrap();
        counts[nbrs.iter().position(|&y| y == w.current).unwrap()] += 1;
    }
    counts
}

#[test]
fn single_step_uniform_within_four_standard_errors() {
    let x = Vertex::canonical(p(6, 2));
    let n = 100_000u32;
    let counts = single_step_counts(x, StepRule::RejectionPair, n, 17);
    assert_eq!(counts.len(), 8);
    let q = 1.0 / 8.0;
    let se = (q * (1.0 - q) / f64::from(n)).sqrt();
    for c in counts {
        let freq = c as f64 / f64::from(n);
        assert!((freq - q).abs() < 4.0 * se, "{freq}");
    }
}

#[test]
fn rejection_and_direct_swap_agree() {
    let x: Vertex = "11000".parse().unwrap();
    let a = single_step_counts(x, StepRule::RejectionPair, 100_000, 1);
    let b = single_step_counts(x, StepRule::DirectSwap, 100_000, 2);
    // two-sample chi-square homogeneity test, 6 cells
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let stat: f64 = a
        .iter()
        .zip(&b)
        .map(|(&ca, &cb)| {
            let total = (ca + cb) as f64;
            let (ea, eb) = (total * na / (na + nb), total * nb / (na + nb));
            (ca as f64 - ea).powi(2) / ea + (cb as f64 - eb).powi(2) / eb
        })
        .sum();
    let p_value = 1.0 - ChiSquared::new(5.0).unwrap().cdf(stat);
    assert!(p_value > 0.01, "p = {p_value}");
}

#[test]
fn walk_matches_direct_sampler_baseline() {
    let q = p(7, 3);
    let walk = sample_many(&WalkConfig::new(q, 8, 200), None, 35_000).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
    let direct: Vec<Vertex> = (0..35_000).map(|_| direct_sample(q, &mut rng)).collect();
    let chi = |counts: Vec<u64>| {
        counts
            .iter()
            .map(|&c| (c as f64 - 1000.0).powi(2) / 1000.0)
            .sum::<f64>()
    };
    let dist = ChiSquared::new(34.0).unwrap();
    for sample in [walk, direct] {
        let stat = chi(cell_counts(q, &sample).unwrap());
        assert!(1.0 - dist.cdf(stat) > 0.001, "stat {stat}");
    }
}

#[test]
fn start_vertex_is_irrelevant_after_mixing() {
    let q = p(6, 3);
    let starts = [
        Vertex::canonical(q),
        "000111".parse().unwrap(),
        "101010".parse().unwrap(),
    ];
    for start in starts {
        let tv = tv_evolution(q, start, 40, true).unwrap().tv;
        assert!(tv[40] < 1e-6);
    }
}

#[test]
fn determinism_across_threads() {
    let cfg = WalkConfig::new(p(8, 3), 77, 60);
    let serial = sample_many(&cfg, None, 400).unwrap();
    let halves: Vec<Vec<Vertex>> = std::thread::scope(|s| {
        let handles: Vec<_> = [0u64..200, 200..400]
            .into_iter()
            .map(|range| {
                s.spawn(move || {
                    range
                        .map(|i| hypersimplex_core::sampler::sample_stream(&cfg, None, i).unwrap())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(serial, halves.concat());
}
