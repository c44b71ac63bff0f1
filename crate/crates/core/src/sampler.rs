//! Random-walk generator of uniform `k`-subsets of `{1, ..., d}` and exact
//! mixing diagnostics.
//!
//! Each step moves to a uniformly random neighbour: two coordinates are drawn
//! until exactly one of them is set, and the two values are swapped. Repeated
//! long enough, the walk's position is close to uniform over all `C(d,k)`
//! subsets.

use alloc::vec::Vec;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{complement_params, degree, vertex_count};
use crate::params::{GraphParams, Regime};
use crate::spectral::{check_matrix_cap, closed_form_spectrum, spectral_gap, MATRIX_CAP};
use crate::vertex::Vertex;

/// Draws allowed in one rejection step before giving up on the RNG.
pub const REJECTION_CAP: u64 = 1_000_000;

/// Target total-variation distance for [`default_steps`].
pub const DEFAULT_EPSILON: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepRule {
    /// Draw `r, s` uniformly from `1..=d` until `x_r + x_s = 1`, then swap.
    #[default]
    RejectionPair,
    /// Draw one set and one clear coordinate directly, then swap.
    DirectSwap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    pub params: GraphParams,
    pub seed: u64,
    pub steps: u64,
    pub lazy: bool,
    pub rule: StepRule,
}

impl WalkConfig {
    pub fn new(params: GraphParams, seed: u64, steps: u64) -> Self {
        WalkConfig {
            params,
            seed,
            steps,
            lazy: false,
            rule: StepRule::default(),
        }
    }

    pub fn lazy(mut self, lazy: bool) -> Self {
        self.lazy = lazy;
        self
    }

    pub fn rule(mut self, rule: StepRule) -> Self {
        self.rule = rule;
        self
    }
}

/// Position and random source of a single chain.
#[derive(Debug, Clone)]
pub struct WalkState {
    pub current: Vertex,
    pub steps_taken: u64,
    pub rejections: u64,
    rng: ChaCha8Rng,
}

impl WalkState {
    /// A chain on ChaCha8 stream `stream` of `seed`; distinct streams are
    /// independent.
    pub fn new(start: Vertex, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        WalkState {
            current: start,
            steps_taken: 0,
            rejections: 0,
            rng,
        }
    }

    pub fn step(&mut self, rule: StepRule, lazy: bool) -> Result<()> {
        self.steps_taken += 1;
        if lazy && self.rng.random::<bool>() {
            return Ok(());
        }
        let p = self.current.params();
        let bits = self.current.bits();
        let swap = match rule {
            StepRule::RejectionPair => {
                let d = p.d();
                let mut draws = 0;
                loop {
                    if draws == REJECTION_CAP {
                        return Err(Error::PathologicalRng(draws));
                    }
                    draws += 1;
                    let r = 1u64 << self.rng.random_range(0..d);
                    let s = 1u64 << self.rng.random_range(0..d);
                    if ((bits & r) != 0) != ((bits & s) != 0) {
                        self.rejections += draws - 1;
                        break r | s;
                    }
                }
            }
            StepRule::DirectSwap => {
                let one = nth_set_bit(bits, self.rng.random_range(0..p.k()));
                let clear = !bits & p.mask();
                let zero = nth_set_bit(clear, self.rng.random_range(0..p.d() - p.k()));
                one | zero
            }
        };
        self.current = Vertex::new_unchecked(p, bits ^ swap);
        Ok(())
    }

    pub fn run(&mut self, steps: u64, rule: StepRule, lazy: bool) -> Result<Vertex> {
        for _ in 0..steps {
            self.step(rule, lazy)?;
        }
        Ok(self.current)
    }
}

fn nth_set_bit(mut word: u64, n: u32) -> u64 {
    for _ in 0..n {
        word &= word - 1;
    }
    word & word.wrapping_neg()
}

/// Probability that one `(r, s)` draw of the rejection rule is accepted:
/// `2 k (d - k) / d^2`.
pub fn acceptance_probability(p: GraphParams) -> Ratio<u64> {
    let d = u64::from(p.d());
    Ratio::new(2 * degree(p), d * d)
}

/// Walks `config.steps` steps from `start` (default: first `k` coordinates
/// set) and returns the endpoint. Uses stream 0 of the seed.
pub fn sample_subset(config: &WalkConfig, start: Option<Vertex>) -> Result<Vertex> {
    sample_stream(config, start, 0)
}

/// Like [`sample_subset`] on an explicit RNG stream.
pub fn sample_stream(config: &WalkConfig, start: Option<Vertex>, stream: u64) -> Result<Vertex> {
    let start = start.unwrap_or_else(|| Vertex::canonical(config.params));
    WalkState::new(start, config.seed, stream).run(config.steps, config.rule, config.lazy)
}

/// `n` independent samples; sample `i` comes from stream `i`, so the result
/// does not depend on how the work is scheduled.
pub fn sample_many(config: &WalkConfig, start: Option<Vertex>, n: u64) -> Result<Vec<Vertex>> {
    (0..n).map(|i| sample_stream(config, start, i)).collect()
}

/// `ceil(ln(C(d,k) / eps) / gap)` with the walk's spectral gap. Graphs with
/// `k > d/2` use the isomorphic complement's spectrum.
pub fn default_steps(p: GraphParams, lazy: bool, eps: f64) -> Result<u64> {
    let q = match p.regime() {
        Regime::Restricted => p,
        Regime::Complemented => complement_params(p).0,
    };
    let gap = spectral_gap(q, lazy)?;
    if gap <= 0.0 {
        return Err(Error::NoSpectralGap { d: p.d(), k: p.k() });
    }
    let n = vertex_count(p)? as f64;
    Ok(libm::ceil(libm::log(n / eps) / gap) as u64)
}

/// Total-variation distance to uniform of the exact walk distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct TvEvolution {
    /// `tv[t]` for `t = 0..=max_t`.
    pub tv: Vec<f64>,
    /// Set for the non-lazy walk when `|lambda_min| >= lambda_1`, where the
    /// negative end of the spectrum controls convergence.
    pub slow_mode_warning: bool,
    /// Largest `|sum(p_t) - 1|` seen over all steps.
    pub mass_drift: f64,
}

/// Pushes the start vertex's point mass through the transition operator
/// `max_t` times, recording the distance to uniform after each step.
pub fn tv_evolution(p: GraphParams, start: Vertex, max_t: u32, lazy: bool) -> Result<TvEvolution> {
    if start.params() != p {
        return Err(Error::ParamMismatch(
            start.params().d(),
            start.params().k(),
            p.d(),
            p.k(),
        ));
    }
    let n = check_matrix_cap(p, MATRIX_CAP)?;
    let vertices: Vec<u64> = Vertex::all(p).map(Vertex::bits).collect();
    let index_of = |bits: u64| {
        vertices
            .binary_search(&bits)
            .expect("neighbour is a vertex")
    };
    let adjacency: Vec<Vec<usize>> = Vertex::all(p)
        .map(|v| {
            crate::graph::neighbors(v)
                .into_iter()
                .map(|w| index_of(w.bits()))
                .collect()
        })
        .collect();
    let r = degree(p) as f64;
    let uniform = 1.0 / n as f64;

    let mut dist = alloc::vec![0.0; n];
    dist[index_of(start.bits())] = 1.0;
    let mut next = alloc::vec![0.0; n];
    let tv_of = |dist: &[f64]| 0.5 * dist.iter().map(|x| libm::fabs(x - uniform)).sum::<f64>();

    let mut tv = Vec::with_capacity(max_t as usize + 1);
    tv.push(tv_of(&dist));
    let mut mass_drift: f64 = 0.0;
    for _ in 0..max_t {
        for (i, out) in next.iter_mut().enumerate() {
            let moved: f64 = adjacency[i].iter().map(|&j| dist[j]).sum::<f64>() / r;
            *out = if lazy {
                0.5 * dist[i] + 0.5 * moved
            } else {
                moved
            };
        }
        core::mem::swap(&mut dist, &mut next);
        tv.push(tv_of(&dist));
        mass_drift = mass_drift.max(libm::fabs(dist.iter().sum::<f64>() - 1.0));
    }

    let q = match p.regime() {
        Regime::Restricted => p,
        Regime::Complemented => complement_params(p).0,
    };
    let s = closed_form_spectrum(q)?;
    Ok(TvEvolution {
        tv,
        slow_mode_warning: !lazy && s.smallest().abs() >= s.second().abs(),
        mass_drift,
    })
}

/// Samples per vertex in canonical order. Fails on a sample from another graph.
pub fn cell_counts(p: GraphParams, samples: &[Vertex]) -> Result<Vec<u64>> {
    let vertices: Vec<u64> = Vertex::all(p).map(Vertex::bits).collect();
    let mut counts = alloc::vec![0u64; vertices.len()];
    for s in samples {
        s.check_same(Vertex::canonical(p))?;
        counts[vertices.binary_search(&s.bits()).expect("valid vertex")] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{inner_product, neighbors};
    use alloc::string::ToString;

    fn p(d: u32, k: u32) -> GraphParams {
        GraphParams::new(d, k).unwrap()
    }
    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    #[test]
    fn forced_move_on_k2() {
        for rule in [StepRule::RejectionPair, StepRule::DirectSwap] {
            let mut w = WalkState::new(v("10"), 7, 0);
            w.step(rule, false).unwrap();
            assert_eq!(w.current.to_string(), "01");
            w.step(rule, false).unwrap();
            assert_eq!(w.current.to_string(), "10");
        }
    }

    #[test]
    fn steps_are_edges() {
        for rule in [StepRule::RejectionPair, StepRule::DirectSwap] {
            let mut w = WalkState::new(Vertex::canonical(p(9, 4)), 3, 1);
            for _ in 0..2000 {
                let before = w.current;
                w.step(rule, false).unwrap();
                assert_eq!(w.current.bits().count_ones(), 4);
                assert_eq!(inner_product(before, w.current), Ok(3));
            }
            assert_eq!(w.steps_taken, 2000);
        }
    }

    #[test]
    fn lazy_steps_stay_or_move_to_neighbour() {
        let mut w = WalkState::new(Vertex::canonical(p(6, 2)), 11, 0);
        let mut stays = 0;
        for _ in 0..4000 {
            let before = w.current;
            w.step(StepRule::RejectionPair, true).unwrap();
            if w.current == before {
                stays += 1;
            } else {
                assert_eq!(inner_product(before, w.current), Ok(1));
            }
        }
        // Binomial(4000, 1/2): mean 2000, sd ~31.6
        assert!((1850..2150).contains(&stays), "{stays}");
    }

    #[test]
    fn single_step_frequencies_g52() {
        let x = v("11000");
        let nbrs = neighbors(x);
        let mut counts = alloc::vec![0u32; nbrs.len()];
        let mut w = WalkState::new(x, 2024, 0);
        for _ in 0..60_000 {
            w.current = x;
            w.step(StepRule::RejectionPair, false).unwrap();
            counts[nbrs.iter().position(|&y| y == w.current).unwrap()] += 1;
        }
        for c in counts {
            assert!((9_600..=10_400).contains(&c), "{c}");
        }
    }

    #[test]
    fn acceptance_rate() {
        assert_eq!(acceptance_probability(p(5, 2)), Ratio::new(12, 25));
        // enumeration of ordered pairs
        let x = v("11000");
        let hits = (1..=5)
            .flat_map(|r| (1..=5).map(move |s| (r, s)))
            .filter(|&(r, s)| x.coordinate(r) != x.coordinate(s))
            .count() as u64;
        assert_eq!(Ratio::new(hits, 25), acceptance_probability(p(5, 2)));

        let mut w = WalkState::new(x, 5, 0);
        w.run(50_000, StepRule::RejectionPair, false).unwrap();
        // expected rejections per step: (1 - 12/25) / (12/25) = 13/12
        let per_step = w.rejections as f64 / 50_000.0;
        assert!((per_step - 13.0 / 12.0).abs() < 0.05, "{per_step}");
    }

    #[test]
    fn sampling_is_deterministic() {
        let cfg = WalkConfig::new(p(6, 2), 99, 100);
        assert_eq!(sample_subset(&cfg, None), sample_subset(&cfg, None));
        assert_eq!(sample_many(&cfg, None, 20), sample_many(&cfg, None, 20));
        let zero = WalkConfig::new(p(5, 2), 1, 0);
        assert_eq!(
            sample_subset(&zero, Some(v("11000"))).unwrap().to_string(),
            "11000"
        );
        assert_eq!(sample_subset(&zero, None).unwrap().subset(), [1, 2]);
    }

    #[test]
    fn streams_differ() {
        let cfg = WalkConfig::new(p(12, 6), 5, 50);
        let many = sample_many(&cfg, None, 30).unwrap();
        assert!(many.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn default_step_heuristic() {
        // gap 2/3, C(5,2) = 10: ceil(ln(1000) * 3/2) = 11
        assert_eq!(default_steps(p(5, 2), false, 0.01), Ok(11));
        assert_eq!(default_steps(p(5, 3), false, 0.01), Ok(11));
        assert!(matches!(
            default_steps(p(2, 1), false, 0.01),
            Err(Error::NoSpectralGap { .. })
        ));
        assert!(default_steps(p(2, 1), true, 0.01).is_ok());
    }

    #[test]
    fn tv_basics() {
        let t = tv_evolution(p(5, 2), v("11000"), 30, false).unwrap();
        assert!((t.tv[0] - 0.9).abs() < 1e-15);
        assert!(t.slow_mode_warning);
        assert!(t.mass_drift < 1e-12);
        assert!(
            !tv_evolution(p(6, 3), v("111000"), 1, true)
                .unwrap()
                .slow_mode_warning
        );
        assert!(tv_evolution(p(12, 5), Vertex::canonical(p(12, 5)), 1, false).is_err());
        assert!(tv_evolution(p(5, 2), v("110000"), 1, false).is_err());
    }

    #[test]
    fn tv_decay_rates() {
        // (5,2): TV(t) * 3^t bounded
        let t = tv_evolution(p(5, 2), v("11000"), 25, false).unwrap();
        let scaled: Vec<f64> =
            t.tv.iter()
                .enumerate()
                .map(|(i, x)| x * 3f64.powi(i as i32))
                .collect();
        assert!(scaled.iter().all(|&s| s < 2.0), "{scaled:?}");

        // (4,2): decays like 2^-t
        let t = tv_evolution(p(4, 2), v("1100"), 15, false).unwrap();
        let slope = (libm::log(t.tv[15]) - libm::log(t.tv[5])) / 10.0;
        assert!(
            (slope / -core::f64::consts::LN_2 - 1.0).abs() < 0.05,
            "{slope}"
        );
    }

    #[test]
    fn lazy_tv_monotone() {
        for q in [p(5, 2), p(4, 2), p(6, 3), p(7, 1)] {
            let t = tv_evolution(q, Vertex::canonical(q), 60, true).unwrap();
            assert!(t.tv.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        }
    }

    #[test]
    fn counts() {
        let q = p(4, 2);
        let s = [v("1100"), v("1100"), v("0011")];
        let c = cell_counts(q, &s).unwrap();
        assert_eq!(c, [1, 0, 0, 0, 0, 2]);
        assert!(cell_counts(q, &[v("11000")]).is_err());
    }
}
