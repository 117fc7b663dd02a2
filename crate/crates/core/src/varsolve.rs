//! Exterior-penalty descent for the discrete variational problems
//!
//! ```text
//! φ₁ = inf { I_p(G) : λ₁(G) >= (1+δ)np }
//! φ₂ = inf { I_p(G) : ‖A(G) − p𝟙𝟙'‖_op >= δnp }
//! ```
//!
//! The solver works on the `n(n−1)/2` upper-triangle weights and minimizes
//! `I_p(G) + ρ·max(0, t − stat(G))²` by projected gradient with Armijo
//! backtracking, escalating `ρ` until the constraint holds. The eigenvalue
//! gradient is `∂λ/∂a_ij = 2 v_i v_j` for a simple eigenpair `(λ, v)`.
//! Results are upper bounds only: every returned graph is feasible and its
//! entropy is recomputed from the weights.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constructions::{build_anticlique, build_centered_clique, build_clique};
use crate::entropy::{ip_derivative, ip_graph, ip_unchecked, EntropyValue};
use crate::error::{check_delta, check_p, invalid, Error, Result};
use crate::graph::{pair_count, WeightedGraph};
use crate::linalg::{spectral_radius, sym_eigen, sym_eigenvalues};
use crate::spectral::centered_matrix;
use crate::Statistic;

/// Slack below which a point still counts as feasible.
pub const FEASIBILITY_TOL: f64 = 1e-6;

/// Eigenvalue gap under which the top eigenpair is treated as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// Largest penalty weight tried before a run gives up on feasibility.
const MAX_RHO: f64 = 1e12;

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    /// Iteration budget per start.
    pub max_iter: usize,
    /// Projected-gradient stopping tolerance.
    pub tol: f64,
    /// Allowed relative excess over the best construction start.
    pub tol_rel: f64,
    pub seed: u64,
    /// Number of constant-plus-noise starts added to the construction starts.
    pub noise_starts: usize,
    /// Amplitude of the uniform noise around `p`.
    pub noise: f64,
    pub rho_init: f64,
    pub rho_factor: f64,
    pub armijo: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_iter: 5000,
            tol: 1e-6,
            tol_rel: 0.01,
            seed: 42,
            noise_starts: 1,
            noise: 0.05,
            rho_init: 1.0,
            rho_factor: 10.0,
            armijo: 1e-4,
        }
    }
}

/// Where a descent run started.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Start {
    /// The constant-`p` graph already meets the threshold.
    Constant,
    Clique,
    Anticlique,
    CenteredClique,
    /// Constant `p` plus uniform noise; the index selects the RNG stream.
    Noise(usize),
}

impl std::fmt::Display for Start {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Start::Constant => f.write_str("constant"),
            Start::Clique => f.write_str("clique"),
            Start::Anticlique => f.write_str("anticlique"),
            Start::CenteredClique => f.write_str("centered_clique"),
            Start::Noise(k) => write!(f, "noise{k}"),
        }
    }
}

/// A feasible (or, inside [`Error::NotConverged`], best infeasible) point.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub graph: WeightedGraph,
    pub p: f64,
    pub statistic: Statistic,
    pub entropy: EntropyValue,
    pub constraint_value: f64,
    pub threshold: f64,
    /// `constraint_value − threshold`.
    pub slack: f64,
    /// Iterations of the winning run.
    pub iterations: usize,
    /// Number of starts that were run.
    pub restarts_used: usize,
    pub seed: u64,
    pub start: Start,
    /// Final penalty weight of the winning run.
    pub rho: f64,
    pub feasible: bool,
}

/// `φ₁` with threshold `(1+δ)np`, started from the clique, the anti-clique
/// and noisy constant graphs.
pub fn solve_phi1(n: usize, p: f64, delta: f64, opts: &SolveOptions) -> Result<Certificate> {
    check_instance(n, p, delta)?;
    let threshold = (1.0 + delta) * n as f64 * p;
    if threshold > n as f64 - 1.0 {
        return Err(invalid(format!(
            "threshold (1+δ)np = {threshold} exceeds the largest possible λ₁ = n − 1"
        )));
    }
    let mut seeds = Vec::new();
    if let Ok(c) = build_clique(n, p, delta) {
        seeds.push((Start::Clique, c.graph.upper(), c.entropy.value));
    }
    if let Ok(c) = build_anticlique(n, p, delta) {
        seeds.push((Start::Anticlique, c.graph.upper(), c.entropy.value));
    }
    solve(n, p, Statistic::Lambda1, threshold, seeds, opts)
}

/// `φ₂` with threshold `δnp` on the centered operator norm, started from the
/// centered clique and noisy constant graphs.
pub fn solve_phi2(n: usize, p: f64, delta: f64, opts: &SolveOptions) -> Result<Certificate> {
    check_instance(n, p, delta)?;
    let threshold = delta * n as f64 * p;
    let mut seeds = Vec::new();
    if let Ok(c) = build_centered_clique(n, p, delta) {
        seeds.push((Start::CenteredClique, c.graph.upper(), c.entropy.value));
    }
    solve(n, p, Statistic::CenteredOpnorm, threshold, seeds, opts)
}

/// Same descent for an arbitrary threshold, using noisy constant starts only.
pub fn solve_with_threshold(
    n: usize,
    p: f64,
    statistic: Statistic,
    threshold: f64,
    opts: &SolveOptions,
) -> Result<Certificate> {
    check_p(p)?;
    if n < 2 {
        return Err(invalid(format!("n = {n} must be at least 2")));
    }
    if !threshold.is_finite() {
        return Err(invalid("threshold must be finite"));
    }
    solve(n, p, statistic, threshold, Vec::new(), opts)
}

fn check_instance(n: usize, p: f64, delta: f64) -> Result<()> {
    check_p(p)?;
    check_delta(delta)?;
    if n < 4 {
        return Err(invalid(format!("n = {n} must be at least 4")));
    }
    if p > 0.5 {
        return Err(invalid(format!("p = {p} must be at most 1/2")));
    }
    Ok(())
}

type Seed = (Start, Vec<f64>, f64);

fn solve(
    n: usize,
    p: f64,
    statistic: Statistic,
    threshold: f64,
    seeds: Vec<Seed>,
    opts: &SolveOptions,
) -> Result<Certificate> {
    if statistic == Statistic::Lambda2 {
        return Err(invalid("the solver supports lambda1 and centered only"));
    }
    if n > WeightedGraph::MAX_VERTICES {
        return Err(invalid(format!(
            "n = {n} exceeds {}",
            WeightedGraph::MAX_VERTICES
        )));
    }
    let prob = Problem::new(n, p, statistic, threshold);

    let constant = vec![p; prob.pairs.len()];
    if Statistic::meets(prob.value(&constant)?, threshold) {
        return certificate(&prob, &constant, Run::trivial(), 1, opts.seed);
    }

    let anchor = vec![1.0; prob.pairs.len()];
    if !prob.feasible(prob.value(&anchor)?) {
        return Err(Error::Infeasible(format!(
            "{statistic} >= {threshold} is not attainable on {n} vertices"
        )));
    }

    let reference = seeds.iter().map(|s| s.2).fold(f64::INFINITY, f64::min);
    let mut starts: Vec<(Start, Vec<f64>)> = seeds.into_iter().map(|(s, x, _)| (s, x)).collect();
    for k in 0..opts.noise_starts {
        starts.push((Start::Noise(k), noisy_constant(&prob, opts, k)));
    }
    let restarts_used = starts.len();

    let runs: Vec<Result<Run>> = starts
        .into_par_iter()
        .enumerate()
        .map(|(idx, (start, x))| descend(&prob, start, x, &anchor, opts, idx as u64))
        .collect();
    let mut best: Option<Run> = None;
    for run in runs {
        let run = run?;
        // Strict comparison keeps the lowest index on ties.
        if best.as_ref().is_none_or(|b| run.key() < b.key()) {
            best = Some(run);
        }
    }
    let best = best.ok_or_else(|| invalid("no starting point"))?;
    let cert = certificate(&prob, &best.x, best.clone(), restarts_used, opts.seed)?;
    if !cert.feasible {
        return Err(Error::NotConverged {
            best: Box::new(cert),
        });
    }
    if reference.is_finite() && cert.entropy.value > reference * (1.0 + opts.tol_rel) {
        return Err(Error::Numerical(format!(
            "certificate entropy {} exceeds the construction start {reference}",
            cert.entropy.value
        )));
    }
    Ok(cert)
}

fn noisy_constant(prob: &Problem, opts: &SolveOptions, k: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(k as u64 + 1);
    (0..prob.pairs.len())
        .map(|_| (prob.p + opts.noise * rng.random_range(-1.0..=1.0)).clamp(0.0, 1.0))
        .collect()
}

fn certificate(
    prob: &Problem,
    x: &[f64],
    run: Run,
    restarts_used: usize,
    seed: u64,
) -> Result<Certificate> {
    let graph = WeightedGraph::from_upper(prob.n, x)?;
    let entropy = ip_graph(&graph, prob.p)?;
    let value = prob.statistic.evaluate(&graph, prob.p)?;
    let slack = value - prob.threshold;
    Ok(Certificate {
        graph,
        p: prob.p,
        statistic: prob.statistic,
        entropy,
        constraint_value: value,
        threshold: prob.threshold,
        slack,
        iterations: run.iterations,
        restarts_used,
        seed,
        start: run.start,
        rho: run.rho,
        feasible: slack >= -FEASIBILITY_TOL,
    })
}

/// Outcome of one descent run.
#[derive(Clone, Debug)]
struct Run {
    start: Start,
    x: Vec<f64>,
    entropy: f64,
    feasible: bool,
    slack: f64,
    iterations: usize,
    rho: f64,
    index: usize,
}

impl Run {
    fn trivial() -> Self {
        Run {
            start: Start::Constant,
            x: Vec::new(),
            entropy: 0.0,
            feasible: true,
            slack: 0.0,
            iterations: 0,
            rho: 0.0,
            index: 0,
        }
    }

    /// Feasible runs first, then by entropy; infeasible ones by slack.
    fn key(&self) -> (u8, f64, usize) {
        if self.feasible {
            (0, self.entropy, self.index)
        } else {
            (1, -self.slack, self.index)
        }
    }
}

struct Problem {
    n: usize,
    p: f64,
    statistic: Statistic,
    threshold: f64,
    pairs: Vec<(usize, usize)>,
}

impl Problem {
    fn new(n: usize, p: f64, statistic: Statistic, threshold: f64) -> Self {
        let mut pairs = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            for j in (i + 1)..n {
                pairs.push((i, j));
            }
        }
        Self {
            n,
            p,
            statistic,
            threshold,
            pairs,
        }
    }

    /// Dense matrix of the statistic: `A` or `A − p𝟙𝟙'`.
    fn dense(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut a = vec![0.0; n * n];
        for (&(i, j), &w) in self.pairs.iter().zip(x) {
            a[i * n + j] = w;
            a[j * n + i] = w;
        }
        if self.statistic == Statistic::CenteredOpnorm {
            a.iter_mut().for_each(|v| *v -= self.p);
        }
        a
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let vals = sym_eigenvalues(self.n, &self.dense(x))?;
        Ok(match self.statistic {
            Statistic::CenteredOpnorm => spectral_radius(&vals),
            _ => vals[0],
        })
    }

    /// Statistic, its gradient in the pair coordinates, and the eigenvalue gap.
    fn value_grad(&self, x: &[f64]) -> Result<(f64, Vec<f64>, f64)> {
        let (value, v, gap) = extreme_pair(self.n, &self.dense(x), self.statistic)?;
        let sign = value.signum();
        let grad = self
            .pairs
            .iter()
            .map(|&(i, j)| sign * 2.0 * v[i] * v[j])
            .collect();
        Ok((value.abs(), grad, gap))
    }

    fn entropy(&self, x: &[f64]) -> f64 {
        x.iter().map(|&w| ip_unchecked(w, self.p)).sum()
    }

    /// Internal feasibility is exact so the reported slack stays clear of
    /// [`FEASIBILITY_TOL`] after an independent re-evaluation.
    fn feasible(&self, value: f64) -> bool {
        value >= self.threshold
    }

    fn penalty(&self, value: f64, rho: f64) -> f64 {
        let viol = (self.threshold - value).max(0.0);
        rho * viol * viol
    }
}

/// Eigenpair driving the statistic: the top pair for `λ₁`, the largest
/// `|λ|` pair for the centered norm. The value is signed; the gap is
/// measured in the ordering that defines the statistic.
fn extreme_pair(n: usize, a: &[f64], statistic: Statistic) -> Result<(f64, Vec<f64>, f64)> {
    let evd = sym_eigen(n, a)?;
    let vals = &evd.values;
    match statistic {
        Statistic::CenteredOpnorm => {
            let k = if vals[0].abs() >= vals[n - 1].abs() {
                0
            } else {
                n - 1
            };
            let mut mags: Vec<f64> = vals.iter().map(|x| x.abs()).collect();
            mags.sort_by(|a, b| b.total_cmp(a));
            let gap = if n > 1 {
                mags[0] - mags[1]
            } else {
                f64::INFINITY
            };
            Ok((vals[k], evd.vector(k), gap))
        }
        _ => {
            let gap = if n > 1 {
                vals[0] - vals[1]
            } else {
                f64::INFINITY
            };
            Ok((vals[0], evd.vector(0), gap))
        }
    }
}

fn project(x: &[f64], dir: &[f64], alpha: f64) -> Vec<f64> {
    x.iter()
        .zip(dir)
        .map(|(xi, gi)| (xi - alpha * gi).clamp(0.0, 1.0))
        .collect()
}

/// Smallest step along the segment from `x` to the feasible `anchor` that
/// restores feasibility, found by bisection.
fn restore(prob: &Problem, x: &[f64], anchor: &[f64]) -> Result<(Vec<f64>, f64)> {
    let at = |t: f64| -> Vec<f64> { x.iter().zip(anchor).map(|(a, b)| a + t * (b - a)).collect() };
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut best = anchor.to_vec();
    let mut best_value = prob.value(anchor)?;
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        let y = at(mid);
        let v = prob.value(&y)?;
        if prob.feasible(v) {
            hi = mid;
            best = y;
            best_value = v;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok((best, best_value))
}

fn descend(
    prob: &Problem,
    start: Start,
    mut x: Vec<f64>,
    complete: &[f64],
    opts: &SolveOptions,
    index: u64,
) -> Result<Run> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
    rng.set_stream(index);

    let mut best: Option<(f64, Vec<f64>, f64)> = None;
    let consider = |best: &mut Option<(f64, Vec<f64>, f64)>, y: &[f64], value: f64| {
        if prob.feasible(value) {
            let e = prob.entropy(y);
            if best.as_ref().is_none_or(|b| e < b.0) {
                *best = Some((e, y.to_vec(), value));
            }
        }
    };
    let mut last_value = prob.value(&x)?;
    consider(&mut best, &x, last_value);

    let mut rho = opts.rho_init;
    let mut step = 1.0 / rho;
    let mut iterations = 0;
    let phase_budget = (opts.max_iter / 10).max(1);
    let mut phase_iters = 0;
    let mut perturbed = false;

    while iterations < opts.max_iter {
        iterations += 1;
        phase_iters += 1;
        let (value, sgrad, gap) = prob.value_grad(&x)?;
        last_value = value;
        if gap < DEGENERACY_GAP {
            if !perturbed {
                perturbed = true;
                for xi in x.iter_mut() {
                    *xi = (*xi + DEGENERACY_GAP * rng.random_range(-1.0..=1.0)).clamp(0.0, 1.0);
                }
                continue;
            }
            step *= 0.5;
        } else {
            perturbed = false;
        }
        consider(&mut best, &x, value);

        let viol = (prob.threshold - value).max(0.0);
        let grad: Vec<f64> = x
            .iter()
            .zip(&sgrad)
            .map(|(&w, &d)| ip_derivative(w, prob.p) - 2.0 * rho * viol * d)
            .collect();
        let f0 = prob.entropy(&x) + rho * viol * viol;
        let pg = x
            .iter()
            .zip(&grad)
            .map(|(&w, &g)| (w - (w - g).clamp(0.0, 1.0)).abs())
            .fold(0.0, f64::max);

        let mut phase_done = pg <= opts.tol || phase_iters >= phase_budget;
        if !phase_done {
            let mut alpha = step;
            let mut accepted = None;
            while alpha > 1e-16 {
                let y = project(&x, &grad, alpha);
                let dec: f64 = y
                    .iter()
                    .zip(&x)
                    .zip(&grad)
                    .map(|((a, b), g)| g * (a - b))
                    .sum();
                let v = prob.value(&y)?;
                let f = prob.entropy(&y) + prob.penalty(v, rho);
                if f <= f0 + opts.armijo * dec {
                    accepted = Some((y, v));
                    break;
                }
                alpha *= 0.5;
            }
            match accepted {
                Some((y, v)) => {
                    x = y;
                    last_value = v;
                    step = (2.0 * alpha).min(1.0);
                }
                None => phase_done = true,
            }
        }

        if phase_done {
            if prob.feasible(last_value) && pg <= opts.tol {
                break;
            }
            if !prob.feasible(last_value) {
                let anchor = best.as_ref().map_or(complete, |b| b.1.as_slice());
                let (y, v) = restore(prob, &x, anchor)?;
                consider(&mut best, &y, v);
            }
            if rho * opts.rho_factor > MAX_RHO {
                break;
            }
            if !prob.feasible(last_value) || pg > opts.tol {
                rho *= opts.rho_factor;
                step = 1.0 / rho;
            }
            phase_iters = 0;
        }
    }
    consider(&mut best, &x, prob.value(&x)?);

    Ok(match best {
        Some((entropy, x, value)) => Run {
            start,
            x,
            entropy,
            feasible: true,
            slack: value - prob.threshold,
            iterations,
            rho,
            index: index as usize,
        },
        None => Run {
            start,
            entropy: prob.entropy(&x),
            x,
            feasible: false,
            slack: last_value - prob.threshold,
            iterations,
            rho,
            index: index as usize,
        },
    })
}

/// Analytic gradient of the statistic with respect to the symmetric pair
/// `(a_ij, a_ji)`, as a row-major `n × n` matrix. The diagonal is frozen
/// and always zero.
pub fn statistic_gradient(g: &WeightedGraph, p: f64, statistic: Statistic) -> Result<Vec<f64>> {
    let (grad, _) = gradient_with_gap(g, p, statistic)?;
    Ok(grad)
}

fn statistic_matrix(g: &WeightedGraph, p: f64, statistic: Statistic) -> Result<Vec<f64>> {
    match statistic {
        Statistic::Lambda1 => Ok(g.weights().to_vec()),
        Statistic::CenteredOpnorm => {
            check_p(p)?;
            Ok(centered_matrix(g, p))
        }
        Statistic::Lambda2 => Err(invalid("gradients are available for lambda1 and centered")),
    }
}

fn gradient_with_gap(g: &WeightedGraph, p: f64, statistic: Statistic) -> Result<(Vec<f64>, f64)> {
    let n = g.n();
    let a = statistic_matrix(g, p, statistic)?;
    let (value, v, gap) = extreme_pair(n, &a, statistic)?;
    let sign = value.signum();
    let mut grad = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                grad[i * n + j] = sign * 2.0 * v[i] * v[j];
            }
        }
    }
    Ok((grad, gap))
}

/// Largest relative error between the analytic gradient and central finite
/// differences (step `1e-5`) over 50 random pairs.
///
/// Errors are relative to `max(|analytic|, 1e-3 · largest sampled |analytic|)`
/// so coordinates where the gradient vanishes do not blow up the ratio.
pub fn gradient_check(g: &WeightedGraph, p: f64, statistic: Statistic, seed: u64) -> Result<f64> {
    const STEP: f64 = 1e-5;
    const SAMPLES: usize = 50;
    let n = g.n();
    if n < 2 {
        return Err(invalid("gradient check needs at least two vertices"));
    }
    let (grad, gap) = gradient_with_gap(g, p, statistic)?;
    if gap <= 1e-6 {
        return Err(Error::Degenerate { gap, tol: 1e-6 });
    }
    let base = statistic_matrix(g, p, statistic)?;
    let eval = |a: &[f64]| -> Result<f64> {
        let vals = sym_eigenvalues(n, a)?;
        Ok(match statistic {
            Statistic::CenteredOpnorm => spectral_radius(&vals),
            _ => vals[0],
        })
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(SAMPLES);
    for _ in 0..SAMPLES {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let mut a = base.clone();
        a[i * n + j] += STEP;
        a[j * n + i] += STEP;
        let up = eval(&a)?;
        a[i * n + j] -= 2.0 * STEP;
        a[j * n + i] -= 2.0 * STEP;
        let down = eval(&a)?;
        samples.push((grad[i * n + j], (up - down) / (2.0 * STEP)));
    }
    let scale = samples.iter().map(|s| s.0.abs()).fold(0.0, f64::max);
    let floor = (1e-3 * scale).max(f64::MIN_POSITIVE);
    Ok(samples
        .iter()
        .map(|&(an, fd)| (an - fd).abs() / an.abs().max(floor))
        .fold(0.0, f64::max))
}
