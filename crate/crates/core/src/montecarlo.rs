//! G(n, p) sampling and Monte Carlo tail estimates.
//!
//! Trial `i` of a run with master seed `s` draws from a ChaCha8 stream keyed
//! by `(s, i)`, so results do not depend on how trials are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::ceil_snapped;
use crate::entropy::normalizer;
use crate::error::{check_delta, check_p, invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::oracle::{enumerate_exact_tail, TailEvent, MAX_ENUMERATION_VERTICES};
use crate::rates::rate_lambda1;
use crate::Statistic;

/// Rows of a rate curve with fewer hits than this are censored.
pub const CENSOR_BELOW: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailEstimate {
    pub estimate: f64,
    pub trials: usize,
    pub successes: usize,
    pub std_error: f64,
    pub seed: u64,
}

impl TailEstimate {
    pub fn new(successes: usize, trials: usize, seed: u64) -> Self {
        let estimate = successes as f64 / trials as f64;
        Self {
            estimate,
            trials,
            successes,
            std_error: (estimate * (1.0 - estimate) / trials as f64).sqrt(),
            seed,
        }
    }
}

/// Whether trials run on the rayon pool or in a plain loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    #[default]
    Parallel,
    Serial,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn check_unit(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(invalid(format!("p = {p} must lie in [0, 1]")))
    }
}

/// Vertices `0..planted` form a clique; every other pair is an
/// independent Bernoulli(p) edge.
fn sample_planted(n: usize, p: f64, planted: usize, rng: &mut impl Rng) -> Result<WeightedGraph> {
    WeightedGraph::from_fn(n, |_, j| {
        if j < planted || rng.random::<f64>() < p {
            1.0
        } else {
            0.0
        }
    })
}

/// One draw of G(n, p) with 0/1 weights.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<WeightedGraph> {
    check_unit(p)?;
    sample_planted(n, p, 0, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn count_hits(
    trials: usize,
    execution: Execution,
    hit: impl Fn(usize) -> Result<bool> + Sync,
) -> Result<usize> {
    let ok = |r: Result<bool>| r.map(usize::from);
    match execution {
        Execution::Parallel => (0..trials).into_par_iter().map(|i| ok(hit(i))).sum(),
        Execution::Serial => (0..trials).map(|i| ok(hit(i))).sum(),
    }
}

/// `P(statistic(G(n, p)) >= threshold)` from `trials` independent draws.
pub fn estimate_tail(
    n: usize,
    p: f64,
    statistic: Statistic,
    threshold: f64,
    trials: usize,
    seed: u64,
) -> Result<TailEstimate> {
    estimate_tail_with(
        n,
        p,
        statistic,
        threshold,
        trials,
        seed,
        Execution::Parallel,
    )
}

pub fn estimate_tail_with(
    n: usize,
    p: f64,
    statistic: Statistic,
    threshold: f64,
    trials: usize,
    seed: u64,
    execution: Execution,
) -> Result<TailEstimate> {
    check_p(p)?;
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    if statistic == Statistic::Lambda2 && n < 2 {
        return Err(invalid("lambda2 needs at least two vertices"));
    }
    let successes = count_hits(trials, execution, |i| {
        let g = sample_planted(n, p, 0, &mut trial_rng(seed, i))?;
        Ok(Statistic::meets(statistic.evaluate(&g, p)?, threshold))
    })?;
    Ok(TailEstimate::new(successes, trials, seed))
}

/// Size of the planted clique used for the conditional estimate, `⌈δnp⌉ + 1`.
pub fn conditional_clique_size(n: usize, p: f64, delta: f64) -> usize {
    ceil_snapped(delta * n as f64 * p) as usize + 1
}

/// `P(λ₂ >= δnp | clique on ⌈δnp⌉+1 fixed vertices)`.
///
/// Conditioning on the clique only fixes the edges inside it, so each trial
/// plants the clique and samples the remaining pairs independently.
pub fn conditional_lambda2(
    n: usize,
    p: f64,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<TailEstimate> {
    conditional_lambda2_with(n, p, delta, trials, seed, Execution::Parallel)
}

pub fn conditional_lambda2_with(
    n: usize,
    p: f64,
    delta: f64,
    trials: usize,
    seed: u64,
    execution: Execution,
) -> Result<TailEstimate> {
    check_p(p)?;
    check_delta(delta)?;
    if trials == 0 {
        return Err(invalid("trials must be at least 1"));
    }
    let k = conditional_clique_size(n, p, delta);
    if k > n {
        return Err(Error::Infeasible(format!(
            "clique of {k} vertices does not fit in n = {n}"
        )));
    }
    let threshold = delta * n as f64 * p;
    let successes = count_hits(trials, execution, |i| {
        let g = sample_planted(n, p, k, &mut trial_rng(seed, i))?;
        Ok(Statistic::meets(crate::spectral::lambda2(&g)?, threshold))
    })?;
    Ok(TailEstimate::new(successes, trials, seed))
}

/// How `p` depends on `n` along a rate curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PRule {
    Fixed(f64),
    /// `p = c · n^{−α}`.
    Power {
        c: f64,
        alpha: f64,
    },
}

impl PRule {
    pub fn p(&self, n: usize) -> f64 {
        match *self {
            PRule::Fixed(p) => p,
            PRule::Power { c, alpha } => c * (n as f64).powf(-alpha),
        }
    }
}

/// One row of [`rate_curve`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveRow {
    pub n: usize,
    pub p: f64,
    /// `(1+δ)np`.
    pub threshold: f64,
    pub tail: TailEstimate,
    /// Exact probability when `n` is small enough to enumerate.
    pub exact: Option<f64>,
    /// `−log(estimate) / (n² p² log(1/p))`, absent when nothing was hit.
    pub normalized: Option<f64>,
    pub theory: f64,
    pub censored: bool,
}

/// Empirical normalized rate of `λ₁ >= (1+δ)np` across `ns`, next to the
/// asymptotic rate. Desk-scale `n` is far from the asymptotic regime, so
/// the comparison is exploratory.
pub fn rate_curve(
    ns: &[usize],
    rule: PRule,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<Vec<CurveRow>> {
    let theory = rate_lambda1(delta)?.value;
    ns.iter()
        .map(|&n| {
            let p = rule.p(n);
            check_p(p)?;
            let threshold = (1.0 + delta) * n as f64 * p;
            let tail = estimate_tail(n, p, Statistic::Lambda1, threshold, trials, seed)?;
            let exact = if n <= MAX_ENUMERATION_VERTICES {
                Some(enumerate_exact_tail(
                    n,
                    p,
                    TailEvent::new(Statistic::Lambda1, threshold),
                )?)
            } else {
                None
            };
            let normalized =
                (tail.successes > 0).then(|| -tail.estimate.ln() / normalizer(n as f64, p));
            Ok(CurveRow {
                n,
                p,
                threshold,
                tail,
                exact,
                normalized,
                theory,
                censored: tail.successes < CENSOR_BELOW,
            })
        })
        .collect()
}
