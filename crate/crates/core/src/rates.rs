//! Independence polynomials of cycles, the roots `θ̄` and their limit `η`,
//! and the closed-form rate functions.

use std::fmt;

use crate::error::{check_delta, check_even, invalid, Error, Result};

/// Largest cycle length handled by subset enumeration.
pub const MAX_BRUTEFORCE_CYCLE: usize = 20;

/// Independence polynomial `P_{C_s}` with exact integer coefficients in
/// ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePolynomial {
    s: usize,
    coeffs: Vec<u128>,
}

impl CyclePolynomial {
    pub fn s(&self) -> usize {
        self.s
    }

    /// `coeffs[k]` is the number of `k`-element independent sets.
    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation in floating point.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * x + c as f64)
    }
}

impl fmt::Display for CyclePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `P_{C_s} = P_{C_{s−1}} + x P_{C_{s−2}}` from `P_{C_2} = 1 + 2x`, `P_{C_3} = 1 + 3x`.
pub fn indpoly_recursive(s: usize) -> Result<CyclePolynomial> {
    if s < 2 {
        return Err(invalid(format!("cycle length s = {s} must be at least 2")));
    }
    let mut prev2: Vec<u128> = vec![1, 2];
    let mut prev1: Vec<u128> = vec![1, 3];
    if s == 2 {
        return Ok(CyclePolynomial { s, coeffs: prev2 });
    }
    for len in 4..=s {
        let mut next = vec![0u128; len / 2 + 1];
        for (k, &c) in prev1.iter().enumerate() {
            next[k] = c;
        }
        for (k, &c) in prev2.iter().enumerate() {
            next[k + 1] = next[k + 1]
                .checked_add(c)
                .ok_or_else(|| Error::Numerical(format!("coefficient overflow at s = {len}")))?;
        }
        prev2 = std::mem::replace(&mut prev1, next);
    }
    Ok(CyclePolynomial { s, coeffs: prev1 })
}

/// Counts independent sets of `C_s` by scanning all `2^s` vertex subsets.
pub fn indpoly_bruteforce(s: usize) -> Result<CyclePolynomial> {
    if !(2..=MAX_BRUTEFORCE_CYCLE).contains(&s) {
        return Err(invalid(format!(
            "subset enumeration needs 2 <= s <= {MAX_BRUTEFORCE_CYCLE}, got {s}"
        )));
    }
    let full = (1u32 << s) - 1;
    let mut coeffs = vec![0u128; s / 2 + 1];
    for mask in 0..=full {
        // Rotating by one maps each vertex to its successor on the cycle.
        let rotated = ((mask << 1) | (mask >> (s - 1))) & full;
        if mask & rotated == 0 {
            coeffs[mask.count_ones() as usize] += 1;
        }
    }
    Ok(CyclePolynomial { s, coeffs })
}

/// `[½(√(1+4x)+1)]^s + [½(√(1+4x)−1)]^s` for even `s`.
pub fn indpoly_closed_form(s: usize, x: f64) -> Result<f64> {
    check_even(s)?;
    check_x(x)?;
    let u = (1.0 + 4.0 * x).sqrt();
    Ok((0.5 * (u + 1.0)).powi(s as i32) + (0.5 * (u - 1.0)).powi(s as i32))
}

/// `2^{−(s−1)} Σ_a C(s, 2a) (1+4x)^a`, valid for every `s >= 2`.
pub fn indpoly_chebyshev_sum(s: usize, x: f64) -> Result<f64> {
    if s < 2 {
        return Err(invalid(format!("cycle length s = {s} must be at least 2")));
    }
    check_x(x)?;
    let w = 1.0 + 4.0 * x;
    let mut binom = 1.0f64;
    let mut total = 0.0;
    for k in 0..=s {
        if k % 2 == 0 {
            total += binom * w.powi((k / 2) as i32);
        }
        binom = binom * (s - k) as f64 / (k + 1) as f64;
    }
    Ok(total / 2f64.powi(s as i32 - 1))
}

fn check_x(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!(
            "x = {x} must be a finite non-negative number"
        )))
    }
}

/// `(P_{C_s}(x), P'_{C_s}(x))` by running the recursion in floating point,
/// which avoids coefficient overflow for long cycles.
pub fn cycle_poly_value(s: usize, x: f64) -> (f64, f64) {
    let (mut v2, mut d2) = (1.0 + 2.0 * x, 2.0);
    if s == 2 {
        return (v2, d2);
    }
    let (mut v1, mut d1) = (1.0 + 3.0 * x, 3.0);
    for _ in 4..=s {
        let v = v1 + x * v2;
        let d = d1 + v2 + x * d2;
        (v2, d2, v1, d1) = (v1, d1, v, d);
    }
    (v1, d1)
}

/// The unique `θ >= 0` with `P_{C_s}(θ) = t`, for even `s` and `t >= 1`.
///
/// Bisection on `[0, t^{2/s} + 1]` (where `P_{C_s}` is strictly increasing
/// and the right end already exceeds `t`), then Newton polishing kept
/// inside the final bracket.
pub fn solve_cycle_root(s: usize, t: f64) -> Result<f64> {
    check_even(s)?;
    if !(t >= 1.0 && t.is_finite()) {
        return Err(invalid(format!("target t = {t} must be at least 1")));
    }
    let mut lo = 0.0f64;
    let mut hi = t.powf(2.0 / s as f64) + 1.0;
    if cycle_poly_value(s, hi).0 < t {
        return Err(Error::Numerical(format!(
            "root bracket [0, {hi}] invalid for s = {s}, t = {t}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cycle_poly_value(s, mid).0 < t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    for _ in 0..4 {
        let (v, d) = cycle_poly_value(s, root);
        let next = root - (v - t) / d;
        if !(lo..=hi).contains(&next) {
            break;
        }
        root = next;
    }
    let residual = (cycle_poly_value(s, root).0 - t).abs();
    if residual > 1e-10 * t {
        return Err(Error::Numerical(format!(
            "root of P_C{s} = {t} has residual {residual:e}"
        )));
    }
    Ok(root)
}

/// `θ̄(C_s, δ)`: the positive root of `P_{C_s}(θ̄) = (1+δ)^s`.
pub fn solve_theta_bar(s: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    solve_cycle_root(s, (1.0 + delta).powi(s as i32))
}

/// `η = lim_s θ̄(C_s, δ) = δ(1+δ)`.
pub fn eta_limit(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(delta * (1.0 + delta))
}

/// Which planted structure attains a `λ₁` rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Clique,
    Anticlique,
    Tie,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Clique => "clique",
            Branch::Anticlique => "anticlique",
            Branch::Tie => "tie",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A normalized rate (units of `n² p² log(1/p)`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateResult {
    pub value: f64,
    pub branch: Branch,
    pub theta_bar: Option<f64>,
    pub eta: Option<f64>,
}

/// `min{(1+δ)²/2, δ(1+δ)}`: clique for `δ > 1`, anti-clique for `δ < 1`.
pub fn rate_lambda1(delta: f64) -> Result<RateResult> {
    check_delta(delta)?;
    let clique = 0.5 * (1.0 + delta) * (1.0 + delta);
    let hub = delta * (1.0 + delta);
    let (value, branch) = if clique < hub {
        (clique, Branch::Clique)
    } else if hub < clique {
        (hub, Branch::Anticlique)
    } else {
        (clique, Branch::Tie)
    };
    Ok(RateResult {
        value,
        branch,
        theta_bar: None,
        eta: Some(hub),
    })
}

/// `½δ²`, the rate of `‖A − p𝟙𝟙'‖_op >= δnp`.
pub fn rate_centered(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    Ok(0.5 * delta * delta)
}

/// `½δ²`, the rate of `λ₂ >= δnp`, which requires `δ < 1`.
pub fn rate_lambda2(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if delta >= 1.0 {
        return Err(invalid(format!(
            "lambda2 rate needs delta < 1, got {delta}"
        )));
    }
    rate_centered(delta)
}

/// The two candidates of the cycle rate: the root `θ` and `½(t−1)^{2/s}`.
pub fn cycle_rate_branches(s: usize, t: f64) -> Result<(f64, f64)> {
    check_even(s)?;
    if t.is_nan() || t <= 1.0 {
        return Err(invalid(format!("cycle threshold t = {t} must exceed 1")));
    }
    Ok((
        solve_cycle_root(s, t)?,
        0.5 * (t - 1.0).powf(2.0 / s as f64),
    ))
}

/// `min{θ(C_s, t), ½(t−1)^{2/s}}`.
pub fn rate_cycle(s: usize, t: f64) -> Result<f64> {
    let (theta, hub) = cycle_rate_branches(s, t)?;
    Ok(theta.min(hub))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_examples() {
        assert_eq!(indpoly_recursive(2).unwrap().coeffs(), &[1, 2]);
        assert_eq!(indpoly_recursive(3).unwrap().coeffs(), &[1, 3]);
        assert_eq!(indpoly_recursive(4).unwrap().coeffs(), &[1, 4, 2]);
        assert!(indpoly_recursive(1).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(indpoly_bruteforce(5).unwrap().coeffs(), &[1, 5, 5]);
        assert_eq!(indpoly_bruteforce(6).unwrap().coeffs(), &[1, 6, 9, 2]);
        assert_eq!(indpoly_bruteforce(2).unwrap().coeffs(), &[1, 2]);
        assert!(indpoly_bruteforce(21).is_err());
        assert_eq!(indpoly_bruteforce(6).unwrap().to_string(), "1,6,9,2");
    }

    #[test]
    fn polynomial_invariants() {
        for s in 2..=60 {
            let p = indpoly_recursive(s).unwrap();
            assert_eq!(p.coeffs()[0], 1);
            assert_eq!(p.degree(), s / 2);
            assert!(p.coeffs().iter().all(|&c| c > 0));
            assert_eq!(p.coeffs()[1], s as u128);
        }
    }

    #[test]
    fn closed_form_examples() {
        assert!((indpoly_closed_form(4, 2.0).unwrap() - 17.0).abs() < 1e-12);
        assert_eq!(indpoly_closed_form(10, 0.0).unwrap(), 1.0);
        assert!((indpoly_closed_form(2, 1.0).unwrap() - 3.0).abs() < 1e-12);
        assert!(indpoly_closed_form(5, 1.0).is_err());
    }

    #[test]
    fn chebyshev_sum_matches_for_all_s() {
        for s in 2..=20 {
            let poly = indpoly_recursive(s).unwrap();
            for k in 0..=20 {
                let x = k as f64 * 0.5;
                let a = poly.eval(x);
                let b = indpoly_chebyshev_sum(s, x).unwrap();
                assert!((a - b).abs() <= 1e-10 * a, "s={s} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn float_recursion_matches_integer_polynomial() {
        for s in (2..=30).step_by(2) {
            let poly = indpoly_recursive(s).unwrap();
            let (v, _) = cycle_poly_value(s, 1.7);
            assert!((v - poly.eval(1.7)).abs() <= 1e-12 * v);
        }
    }

    #[test]
    fn theta_bar_examples() {
        let t4 = solve_theta_bar(4, 1.0).unwrap();
        assert!((t4 - (-4.0 + 136f64.sqrt()) / 4.0).abs() < 1e-12);
        let t6 = solve_theta_bar(6, 1.0).unwrap();
        assert!((t6 - 1.984_774_835_457_815).abs() < 1e-10);
        assert!(solve_theta_bar(8, 1e-9).unwrap() < 1e-8);
        assert!(solve_theta_bar(8, 0.0).is_err());
        assert!(solve_theta_bar(5, 1.0).is_err());
    }

    #[test]
    fn theta_bar_residual_contract() {
        for s in (2..=40).step_by(2) {
            for delta in [0.25f64, 0.5, 1.0, 2.0, 4.0] {
                let target = (1.0 + delta).powi(s as i32);
                let th = solve_theta_bar(s, delta).unwrap();
                let poly = indpoly_recursive(s).unwrap();
                assert!((poly.eval(th) - target).abs() <= 1e-10 * target);
            }
        }
    }

    #[test]
    fn theta_bar_increasing_in_delta() {
        for s in [4, 10, 20] {
            let mut prev = 0.0;
            for k in 1..=40 {
                let th = solve_theta_bar(s, k as f64 * 0.1).unwrap();
                assert!(th > prev);
                prev = th;
            }
        }
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_limit(1.0).unwrap(), 2.0);
        assert_eq!(eta_limit(0.5).unwrap(), 0.75);
    }

    #[test]
    fn hub_branch_converges() {
        for delta in [0.25f64, 0.5, 1.0, 2.0, 4.0] {
            let target = (1.0 + delta).powi(2);
            let mut prev = f64::INFINITY;
            for s in (4..=60).step_by(2) {
                let v = ((1.0f64 + delta).powi(s) - 1.0).powf(2.0 / s as f64);
                let err = (v - target).abs();
                assert!(err <= prev + 1e-12 * target);
                prev = err;
            }
            assert!(prev < 1e-3 * target);
        }
    }

    #[test]
    fn lambda1_rate_examples() {
        let r = rate_lambda1(0.5).unwrap();
        assert_eq!((r.value, r.branch), (0.75, Branch::Anticlique));
        let r = rate_lambda1(1.0).unwrap();
        assert_eq!((r.value, r.branch), (2.0, Branch::Tie));
        let r = rate_lambda1(3.0).unwrap();
        assert_eq!((r.value, r.branch), (8.0, Branch::Clique));
        assert!(rate_lambda1(-1.0).is_err());
    }

    #[test]
    fn lambda1_rate_increasing_and_continuous() {
        let mut prev = 0.0;
        for k in 1..=400 {
            let d = k as f64 * 0.01;
            let v = rate_lambda1(d).unwrap().value;
            assert!(v > prev);
            if k > 1 {
                assert!(v - prev < 0.1);
            }
            prev = v;
        }
    }

    #[test]
    fn centered_rate_examples() {
        assert_eq!(rate_centered(1.0).unwrap(), 0.5);
        assert_eq!(rate_centered(0.5).unwrap(), 0.125);
        for d in [0.1, 0.5, 1.0, 3.0] {
            assert!(rate_centered(d).unwrap() < 0.5 * (1.0 + d) * (1.0 + d));
        }
        assert_eq!(rate_lambda2(0.5).unwrap(), 0.125);
        assert!(rate_lambda2(1.5).is_err());
    }

    #[test]
    fn cycle_rate_examples() {
        let (theta, hub) = cycle_rate_branches(4, 16.0).unwrap();
        assert!((theta - 1.915_475_947_422_65).abs() < 1e-10);
        assert!((hub - 0.5 * 15f64.sqrt()).abs() < 1e-12);
        assert!((rate_cycle(4, 16.0).unwrap() - theta).abs() < 1e-15);
        let (theta, hub) = cycle_rate_branches(2, 2.0).unwrap();
        assert!((theta - 0.5).abs() < 1e-12 && (hub - 0.5).abs() < 1e-15);
        assert!(rate_cycle(4, 1.0).is_err());
    }

    #[test]
    fn cycle_rate_tends_to_lambda1_rate() {
        for delta in [0.5f64, 1.0, 2.0] {
            let limit = rate_lambda1(delta).unwrap().value;
            let r = rate_cycle(60, (1.0 + delta).powi(60)).unwrap();
            assert!(
                (r - limit).abs() < 0.02 * limit,
                "delta={delta}: {r} vs {limit}"
            );
        }
    }
}
