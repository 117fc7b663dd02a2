//! Bernoulli relative entropy `I_p(x) = x log(x/p) + (1−x) log((1−x)/(1−p))`
//! on scalars and weighted graphs, plus the small-`p` estimates as
//! checkable quantities.

use crate::error::{check_p, invalid, Result};
use crate::graph::WeightedGraph;

/// Entropy of a weighted graph relative to G(n, p), in nats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    /// `value / (n² p² log(1/p))`.
    pub normalized: f64,
}

impl EntropyValue {
    pub fn new(value: f64, n: f64, p: f64) -> Self {
        Self {
            value,
            normalized: value / normalizer(n, p),
        }
    }
}

/// The rate scale `n² p² log(1/p)`.
pub fn normalizer(n: f64, p: f64) -> f64 {
    n * n * p * p * (1.0 / p).ln()
}

/// `x log(x/p)` with `0 log 0 = 0`.
#[inline]
fn xlogx_over(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (x / p).ln()
    }
}

/// `I_p(x)` without argument checks; `x` must already lie in `[0, 1]`.
#[inline]
pub(crate) fn ip_unchecked(x: f64, p: f64) -> f64 {
    xlogx_over(x, p) + xlogx_over(1.0 - x, 1.0 - p)
}

/// `I_p'(x) = log(x/p) − log((1−x)/(1−p))`, evaluated with `x` pulled
/// inside `[1e-15, 1 − 1e-15]` so the endpoints stay finite.
#[inline]
pub(crate) fn ip_derivative(x: f64, p: f64) -> f64 {
    let x = x.clamp(1e-15, 1.0 - 1e-15);
    (x / p).ln() - ((1.0 - x) / (1.0 - p)).ln()
}

pub fn ip_scalar(x: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(invalid(format!("x = {x} must lie in [0, 1]")));
    }
    Ok(ip_unchecked(x, p))
}

/// `I_p(G) = Σ_{i<j} I_p(a_ij)`, summed row by row over the strict upper triangle.
pub fn ip_graph(g: &WeightedGraph, p: f64) -> Result<EntropyValue> {
    check_p(p)?;
    let n = g.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            total += ip_unchecked(g.weight(i, j), p);
        }
    }
    Ok(EntropyValue::new(total, n as f64, p))
}

/// `F_p(x) = I_p(p − x) − I_p(p + x)`, non-negative for `0 <= x <= p <= 1/2`.
pub fn ip_asym_gap(x: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if p > 0.5 {
        return Err(invalid(format!("p = {p} must be at most 1/2")));
    }
    if !(0.0..=p).contains(&x) {
        return Err(invalid(format!("x = {x} must lie in [0, p]")));
    }
    Ok(ip_unchecked(p - x, p) - ip_unchecked(p + x, p))
}

/// One row of [`appendix_estimates_report`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateRow {
    pub x: f64,
    /// `I_p(p+x)`.
    pub value: f64,
    /// `I_p(p+x) / (x²/2p)`; tends to 1 when `x ≪ p`.
    pub small_ratio: f64,
    /// `I_p(p+x) / (x log(x/p))`; tends to 1 when `x ≫ p`.
    pub large_ratio: f64,
    /// `I_p(p+x) >= (x/b)² I_p(p+b)`, `None` when `x > b`.
    pub quadratic_holds: Option<bool>,
    /// `I_p(p+x) >= x² I_p(1 − 1/log(1/p))`.
    pub corollary_holds: bool,
}

/// Ratios and inequality checks for the small-`p` entropy estimates on an
/// `x` grid. The asymptotic ratios are diagnostic: no pass/fail attaches
/// to them. Grid points with `p + x > 1` are rejected.
pub fn appendix_estimates_report(p: f64, xs: &[f64], b: f64) -> Result<Vec<EstimateRow>> {
    check_p(p)?;
    if !(b > 0.0 && b <= 1.0 - p) {
        return Err(invalid(format!("b = {b} must lie in (0, 1 − p]")));
    }
    let at_b = ip_unchecked(p + b, p);
    let corollary_const = corollary_constant(p)?;
    xs.iter()
        .map(|&x| {
            if !(x > 0.0 && x <= 1.0 - p) {
                return Err(invalid(format!(
                    "grid point x = {x} must lie in (0, 1 − p]"
                )));
            }
            let value = ip_unchecked(p + x, p);
            Ok(EstimateRow {
                x,
                value,
                small_ratio: value / (x * x / (2.0 * p)),
                large_ratio: value / (x * (x / p).ln()),
                quadratic_holds: (x <= b).then(|| value >= (x / b).powi(2) * at_b),
                corollary_holds: value >= x * x * corollary_const,
            })
        })
        .collect()
}

/// `I_p(1 − 1/log(1/p))`, the constant in the quadratic lower bound.
pub fn corollary_constant(p: f64) -> Result<f64> {
    check_p(p)?;
    let y = 1.0 - 1.0 / (1.0 / p).ln();
    if !(0.0..=1.0).contains(&y) {
        return Err(invalid(format!(
            "1 − 1/log(1/p) = {y} is outside [0, 1] for p = {p}"
        )));
    }
    Ok(ip_unchecked(y, p))
}
