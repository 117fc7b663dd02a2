//! Step graphons on `m` equal blocks: embeddings of weighted graphs, signed
//! cycle densities, operator norms, degree thresholding and the inequality
//! checks used in the lower-bound argument.
//!
//! A step graphon is stored as its symmetric `m × m` block matrix `M`. The
//! integral operator then has norm `max|eig(M)| / m` and
//! `t(C_s, W) = m^{−s} trace(M^s)`, both exact.

use crate::error::{check_even, check_p, invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{
    agree, spectral_radius, sym_eigenvalues, trace_power_by_products, trace_power_from_values,
};
use crate::spectral::TRACE_AGREEMENT;
use crate::BoundPair;

#[derive(Clone, Debug, PartialEq)]
pub struct StepGraphon {
    m: usize,
    values: Vec<f64>,
    signed: bool,
}

/// Value on the diagonal blocks when a graph is embedded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// Diagonal blocks are 0, like the adjacency matrix.
    Hat,
    /// Diagonal blocks are `p`.
    Padded,
}

impl std::str::FromStr for Embedding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hat" => Ok(Embedding::Hat),
            "padded" => Ok(Embedding::Padded),
            other => Err(invalid(format!(
                "unknown embedding '{other}' (expected hat or padded)"
            ))),
        }
    }
}

impl StepGraphon {
    /// Checks symmetry and the range `[0, 1]`, or `[−1, 1]` when `signed`.
    pub fn new(m: usize, values: Vec<f64>, signed: bool) -> Result<Self> {
        if m == 0 {
            return Err(invalid("a step graphon needs at least one block"));
        }
        if values.len() != m * m {
            return Err(invalid(format!(
                "expected {} block values, got {}",
                m * m,
                values.len()
            )));
        }
        let lo = if signed { -1.0 } else { 0.0 };
        for i in 0..m {
            for j in 0..m {
                let v = values[i * m + j];
                if !(lo..=1.0).contains(&v) {
                    return Err(invalid(format!(
                        "block ({i},{j}) = {v} is outside [{lo}, 1]"
                    )));
                }
                if v != values[j * m + i] {
                    return Err(invalid(format!("blocks ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        Ok(Self { m, values, signed })
    }

    /// Builds from `f(i, j)` for `i <= j` and mirrors it.
    pub fn from_fn(m: usize, signed: bool, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut values = vec![0.0; m * m];
        for i in 0..m {
            for j in i..m {
                let v = f(i, j);
                values[i * m + j] = v;
                values[j * m + i] = v;
            }
        }
        Self::new(m, values, signed)
    }

    pub fn constant(m: usize, c: f64, signed: bool) -> Result<Self> {
        Self::new(m, vec![c; m * m], signed)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.m + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    /// The signed graphon `W − c`.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::new(self.m, self.values.iter().map(|v| v - c).collect(), true)
    }

    /// The signed graphon `self − other`.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(invalid(format!(
                "block counts differ: {} vs {}",
                self.m, other.m
            )));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.m, values, true)
    }

    /// `|U|`, a nonnegative graphon.
    pub fn abs(&self) -> Self {
        Self {
            m: self.m,
            values: self.values.iter().map(|v| v.abs()).collect(),
            signed: false,
        }
    }

    /// `∬ W`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() / (self.m * self.m) as f64
    }

    /// `∬ W²`.
    pub fn l2_squared(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>() / (self.m * self.m) as f64
    }

    /// Operator norm of the integral operator, `max|eig(M)| / m`.
    pub fn opnorm(&self) -> Result<f64> {
        let vals = sym_eigenvalues(self.m, &self.values)?;
        Ok(spectral_radius(&vals) / self.m as f64)
    }

    /// Degrees `d(x) = ∫ W(x, y) dy` per block.
    pub fn degrees(&self) -> Vec<f64> {
        let m = self.m;
        (0..m)
            .map(|i| self.values[i * m..(i + 1) * m].iter().sum::<f64>() / m as f64)
            .collect()
    }
}

/// The step graphon of `g` on `n` blocks.
pub fn embed(g: &WeightedGraph, p: f64, variant: Embedding) -> Result<StepGraphon> {
    check_p(p)?;
    let n = g.n();
    let diag = match variant {
        Embedding::Hat => 0.0,
        Embedding::Padded => p,
    };
    let mut values = g.weights().to_vec();
    for i in 0..n {
        values[i * n + i] = diag;
    }
    StepGraphon::new(n, values, false)
}

/// `t(C_s, U) = m^{−s} trace(M^s)` for even `s`, computed from eigenvalues
/// and checked against repeated multiplication.
pub fn signed_cycle_density(u: &StepGraphon, s: usize) -> Result<f64> {
    check_even(s)?;
    let m = u.m as f64;
    let vals = sym_eigenvalues(u.m, &u.values)?;
    let by_eig = trace_power_from_values(&vals, m, s);
    let by_pow = trace_power_by_products(u.m, &u.values, m, s);
    if !agree(by_eig, by_pow, TRACE_AGREEMENT) {
        return Err(Error::Numerical(format!(
            "signed density routes disagree for s = {s}: {by_eig:e} vs {by_pow:e}"
        )));
    }
    Ok(by_eig)
}

/// `‖U‖_op^s <= t(C_s, U)` for even `s`.
pub fn opnorm_bound_check(u: &StepGraphon, s: usize) -> Result<BoundPair> {
    check_even(s)?;
    Ok(BoundPair {
        lhs: u.opnorm()?.powi(s as i32),
        rhs: signed_cycle_density(u, s)?,
    })
}

/// `t(C_s, U) <= (∬U²)^{s/2}` for nonnegative `U` and even `s`.
pub fn holder_cycle_check(u: &StepGraphon, s: usize) -> Result<BoundPair> {
    check_even(s)?;
    if !u.is_nonnegative() {
        return Err(invalid(
            "the cycle Hölder check needs a nonnegative graphon",
        ));
    }
    Ok(BoundPair {
        lhs: signed_cycle_density(u, s)?,
        rhs: u.l2_squared().powi(s as i32 / 2),
    })
}

/// Degree thresholding of a nonnegative `U` at level `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeProfile {
    pub b: f64,
    pub degrees: Vec<f64>,
    /// Blocks with `d(x) >= b`.
    pub high: Vec<bool>,
    /// `μ(B_b)`.
    pub b_mass: f64,
    /// `(δp)^{−2} ∬_{B × B̄} U²`.
    pub theta_b: f64,
    /// `(δp)^{−2} ∬_{B̄ × B̄} U²`.
    pub eta_b: f64,
}

pub fn degree_profile(u: &StepGraphon, b: f64, delta: f64, p: f64) -> Result<DegreeProfile> {
    if !(b > 0.0 && b <= 1.0) {
        return Err(invalid(format!("b = {b} must lie in (0, 1]")));
    }
    if !(delta > 0.0 && p > 0.0) {
        return Err(invalid("delta and p must be positive"));
    }
    if !u.is_nonnegative() {
        return Err(invalid("degree thresholding needs a nonnegative graphon"));
    }
    let m = u.m;
    let degrees = u.degrees();
    // Block sums round; a degree equal to b in exact arithmetic counts as high.
    let high: Vec<bool> = degrees.iter().map(|&d| d >= b - 1e-12).collect();
    let scale = 1.0 / ((delta * p).powi(2) * (m * m) as f64);
    let (mut cross, mut low) = (0.0, 0.0);
    for i in 0..m {
        for j in 0..m {
            let w2 = u.value(i, j).powi(2);
            match (high[i], high[j]) {
                (true, false) => cross += w2,
                (false, false) => low += w2,
                _ => {}
            }
        }
    }
    Ok(DegreeProfile {
        b,
        b_mass: high.iter().filter(|&&h| h).count() as f64 / m as f64,
        degrees,
        high,
        theta_b: cross * scale,
        eta_b: low * scale,
    })
}

/// Cycle embeddings split by where their vertices land.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaSplit {
    /// Even positions in `B_b`, odd positions in `B̄_b`.
    pub gamma1: f64,
    /// Even positions in `B̄_b`, odd positions in `B_b`.
    pub gamma2: f64,
    /// Every vertex in `B̄_b`.
    pub gamma3: f64,
    /// `θ_b^{s/2} (δp)^s`, which bounds `gamma1` and `gamma2`.
    pub alternating_bound: f64,
    /// `η_b^{s/2} (δp)^s`, which bounds `gamma3`.
    pub low_bound: f64,
}

/// Restricted cycle densities via masked products
/// `m^{−s} tr((D_B̄ U D_B U)^{s/2})` and `m^{−s} tr((D_B̄ U D_B̄)^s)`.
pub fn gamma_split(
    u: &StepGraphon,
    profile: &DegreeProfile,
    s: usize,
    delta: f64,
    p: f64,
) -> Result<GammaSplit> {
    check_even(s)?;
    let m = u.m;
    if profile.high.len() != m {
        return Err(invalid("degree profile does not match the graphon"));
    }
    let masked = |row_high: bool, col_high: bool| -> Vec<f64> {
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                if profile.high[i] == row_high && profile.high[j] == col_high {
                    out[i * m + j] = u.value(i, j) / m as f64;
                }
            }
        }
        out
    };
    let low_high = masked(false, true);
    let high_low = masked(true, false);
    let low_low = masked(false, false);
    let alt = mat_mul(m, &low_high, &high_low);
    let alt_rev = mat_mul(m, &high_low, &low_high);
    let k = s / 2;
    let gamma1 = trace_of_power(m, &alt, k);
    let gamma2 = trace_of_power(m, &alt_rev, k);
    let gamma3 = trace_of_power(m, &low_low, s);
    let dp_s = (delta * p).powi(s as i32);
    Ok(GammaSplit {
        gamma1,
        gamma2,
        gamma3,
        alternating_bound: profile.theta_b.powi(k as i32) * dp_s,
        low_bound: profile.eta_b.powi(k as i32) * dp_s,
    })
}

fn mat_mul(m: usize, a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; m * m];
    for i in 0..m {
        for l in 0..m {
            let ail = a[i * m + l];
            if ail != 0.0 {
                for j in 0..m {
                    out[i * m + j] += ail * b[l * m + j];
                }
            }
        }
    }
    out
}

fn trace_of_power(m: usize, a: &[f64], k: usize) -> f64 {
    let mut acc = a.to_vec();
    for _ in 1..k {
        acc = mat_mul(m, &acc, a);
    }
    (0..m).map(|i| acc[i * m + i]).sum()
}

/// Minimizer of `x + y/2` subject to `2x^{s/2} + y^{s/2} >= 1`, `x, y >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvexSplit {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    /// Objective at the `x = 0` corner, `(0, 1)`.
    pub x_zero_value: f64,
    /// Objective at the `y = 0` corner, `(2^{−2/s}, 0)`.
    pub y_zero_value: f64,
}

impl ConvexSplit {
    /// Whether the minimizer sits on a coordinate axis.
    pub fn on_axis(&self) -> bool {
        self.x == 0.0 || self.y == 0.0
    }
}

/// Grid search along the active constraint plus both corners. Ties go to
/// the smallest `x`, so a flat objective reports the `x = 0` corner.
pub fn convex_min_split(s: usize) -> Result<ConvexSplit> {
    const GRID: usize = 100_000;
    check_even(s)?;
    let half = s as f64 / 2.0;
    let x_max = 0.5f64.powf(1.0 / half);
    let y_of = |x: f64| (1.0 - 2.0 * x.powf(half)).max(0.0).powf(1.0 / half);
    let objective = |x: f64, y: f64| x + 0.5 * y;

    let mut best = (0.0, 1.0, objective(0.0, 1.0));
    for k in 1..=GRID {
        let x = if k == GRID {
            x_max
        } else {
            x_max * k as f64 / GRID as f64
        };
        let y = if k == GRID { 0.0 } else { y_of(x) };
        let v = objective(x, y);
        if v < best.2 - 1e-12 {
            best = (x, y, v);
        }
    }
    Ok(ConvexSplit {
        x: best.0,
        y: best.1,
        value: best.2,
        x_zero_value: objective(0.0, 1.0),
        y_zero_value: objective(x_max, 0.0),
    })
}

/// The four integrals controlled a priori for a near-optimal `U`, and their
/// ratios to the scales they are compared with. Diagnostic only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AprioriReport {
    /// `∬ U`.
    pub mean: f64,
    /// `∬ U²`.
    pub mean_square: f64,
    /// `μ(B_b)`.
    pub b_mass: f64,
    /// `∫_{B̄_b} d(x)² dx`.
    pub low_degree_square: f64,
    /// `mean / (δ p^{3/2} √log(1/p))`.
    pub mean_ratio: f64,
    /// `mean_square / (δ²p²)`.
    pub mean_square_ratio: f64,
    /// `b_mass / (δ²p²/b)`.
    pub b_mass_ratio: f64,
    /// `low_degree_square / (δ²p² b)`.
    pub low_degree_ratio: f64,
}

/// For a graph embedding the diagonal blocks contribute `O(1/m)` to every
/// integral; no correction is applied.
pub fn apriori_quantities(u: &StepGraphon, p: f64, delta: f64, b: f64) -> Result<AprioriReport> {
    check_p(p)?;
    let profile = degree_profile(u, b, delta, p)?;
    let m = u.m as f64;
    let low_degree_square: f64 = profile
        .degrees
        .iter()
        .zip(&profile.high)
        .filter(|(_, &h)| !h)
        .map(|(d, _)| d * d / m)
        .sum();
    let dp2 = (delta * p).powi(2);
    let mean = u.integral();
    let mean_square = u.l2_squared();
    Ok(AprioriReport {
        mean,
        mean_square,
        b_mass: profile.b_mass,
        low_degree_square,
        mean_ratio: mean / (delta * p.powf(1.5) * (1.0 / p).ln().sqrt()),
        mean_square_ratio: mean_square / dp2,
        b_mass_ratio: profile.b_mass / (dp2 / b),
        low_degree_ratio: low_degree_square / (dp2 * b),
    })
}
