//! Planted feasible points for the variational problems: the clique, the
//! anti-clique (hub) and the centered clique, with their Rayleigh
//! certificates and entropy costs.
//!
//! Each construction has an analytic *plan* (sizes, Rayleigh value and
//! entropy in closed form, usable for any `n`) and a materialized
//! [`Construction`] carrying the dense weight matrix for `n <= 10⁴`.

use std::fmt;

use crate::entropy::{ip_unchecked, EntropyValue};
use crate::error::{check_delta, check_p, Error, Result};
use crate::graph::WeightedGraph;
use crate::spectral::{centered_opnorm, lambda1, THRESHOLD_GUARD};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Clique,
    Anticlique,
    CenteredClique,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Clique => "clique",
            ConstructionKind::Anticlique => "anticlique",
            ConstructionKind::CenteredClique => "centered_clique",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `⌈s⌉`, treating values within `1e-9` relative of an integer as that integer.
pub(crate) fn ceil_snapped(s: f64) -> f64 {
    let r = s.round();
    if (s - r).abs() <= 1e-9 * s.abs().max(1.0) {
        r
    } else {
        s.ceil()
    }
}

fn pairs(k: usize) -> f64 {
    k as f64 * (k as f64 - 1.0) / 2.0
}

/// Closed-form description of a planted clique on `block = ⌈s⌉ + 1` vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CliquePlan {
    pub kind: ConstructionKind,
    pub n: usize,
    pub p: f64,
    pub delta: f64,
    pub s: f64,
    pub block: usize,
    /// Rayleigh value of the uniform vector on the block.
    pub achieved: f64,
    pub threshold: f64,
    pub entropy: EntropyValue,
}

/// Clique sized by `s = (1+δ)np`; certifies `λ₁ >= ⌈s⌉ >= (1+δ)np`.
pub fn clique_plan(n: usize, p: f64, delta: f64) -> Result<CliquePlan> {
    check_p(p)?;
    check_delta(delta)?;
    let s = (1.0 + delta) * n as f64 * p;
    let ceil = ceil_snapped(s);
    plan_block(ConstructionKind::Clique, n, p, delta, s, ceil, ceil, s)
}

/// Clique sized by `s = (δnp + 2p)/(1−p)`; certifies
/// `‖A − p𝟙𝟙'‖_op >= ⌈s⌉ − p(⌈s⌉+1) >= δnp`.
pub fn centered_clique_plan(n: usize, p: f64, delta: f64) -> Result<CliquePlan> {
    check_p(p)?;
    check_delta(delta)?;
    let s = (delta * n as f64 * p + 2.0 * p) / (1.0 - p);
    let ceil = ceil_snapped(s);
    let achieved = ceil - p * (ceil + 1.0);
    plan_block(
        ConstructionKind::CenteredClique,
        n,
        p,
        delta,
        s,
        ceil,
        achieved,
        delta * n as f64 * p,
    )
}

#[allow(clippy::too_many_arguments)]
fn plan_block(
    kind: ConstructionKind,
    n: usize,
    p: f64,
    delta: f64,
    s: f64,
    ceil: f64,
    achieved: f64,
    threshold: f64,
) -> Result<CliquePlan> {
    let block = ceil as usize + 1;
    if block > n {
        return Err(Error::Infeasible(format!(
            "{kind} on {block} vertices does not fit in n = {n} (s = {s:.6})"
        )));
    }
    let entropy = EntropyValue::new(pairs(block) * ip_unchecked(1.0, p), n as f64, p);
    Ok(CliquePlan {
        kind,
        n,
        p,
        delta,
        s,
        block,
        achieved,
        threshold,
        entropy,
    })
}

/// Closed-form description of the anti-clique: `hub` vertices joined to
/// everything, weight `p` elsewhere, and the test vector
/// `K(1,…,1, (1+δ)p,…,(1+δ)p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnticliquePlan {
    pub n: usize,
    pub p: f64,
    pub delta: f64,
    /// `hub / (n p²)`, the smallest `z` with `⌊z n p²⌋ = hub`.
    pub z: f64,
    pub hub: usize,
    /// Normalizing constant `K` of the test vector.
    pub k_norm: f64,
    pub rayleigh: f64,
    pub threshold: f64,
    pub entropy: EntropyValue,
}

/// Exact `v'Av` for the anti-clique with `hub` hub vertices and the
/// `K`-normalized test vector.
pub fn anticlique_rayleigh(n: usize, p: f64, delta: f64, hub: usize) -> f64 {
    let (nf, h) = (n as f64, hub as f64);
    let rest = nf - h;
    let c = (1.0 + delta) * p;
    let k2 = 1.0 / (h + rest * c * c);
    k2 * (h * (h - 1.0) + 2.0 * h * rest * c + rest * (rest - 1.0) * p * c * c)
}

/// Plan with an explicit hub size (`hub = 0` is the constant-`p` graph).
pub fn anticlique_plan_with_hub(
    n: usize,
    p: f64,
    delta: f64,
    hub: usize,
) -> Result<AnticliquePlan> {
    check_p(p)?;
    check_delta(delta)?;
    if hub > n || n < 2 {
        return Err(Error::Infeasible(format!(
            "hub of {hub} vertices does not fit in n = {n}"
        )));
    }
    let (nf, h) = (n as f64, hub as f64);
    let c = (1.0 + delta) * p;
    let k_norm = 1.0 / (h + (nf - h) * c * c).sqrt();
    let touched = pairs(hub) + h * (nf - h);
    Ok(AnticliquePlan {
        n,
        p,
        delta,
        z: h / (nf * p * p),
        hub,
        k_norm,
        rayleigh: anticlique_rayleigh(n, p, delta, hub),
        threshold: (1.0 + delta) * nf * p,
        entropy: EntropyValue::new(touched * ip_unchecked(1.0, p), nf, p),
    })
}

/// Smallest hub (equivalently smallest `z`) whose exact Rayleigh value
/// reaches `(1+δ)np`.
///
/// The quotient depends on `z` only through `⌊z n p²⌋`, so the search runs
/// over hub sizes `1, 2, …, n`; an empty hub is never accepted.
pub fn anticlique_plan(n: usize, p: f64, delta: f64) -> Result<AnticliquePlan> {
    check_p(p)?;
    check_delta(delta)?;
    let threshold = (1.0 + delta) * n as f64 * p;
    let hub = (1..=n)
        .find(|&h| anticlique_rayleigh(n, p, delta, h) >= threshold)
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "no hub of at most n = {n} vertices reaches (1+δ)np = {threshold}"
            ))
        })?;
    anticlique_plan_with_hub(n, p, delta, hub)
}

/// A materialized planted graph with its test vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub p: f64,
    pub delta: f64,
    pub graph: WeightedGraph,
    /// Vector whose Rayleigh quotient certifies the spectral statistic; not
    /// normalized, so clique quotients are exact integer ratios.
    pub test_vector: Vec<f64>,
    /// Anti-clique scale.
    pub z: Option<f64>,
    /// Clique size parameter.
    pub s: Option<f64>,
    /// Number of planted vertices (clique block or hub).
    pub block: usize,
    pub entropy: EntropyValue,
    pub achieved: f64,
    pub threshold: f64,
}

fn materialize_block(plan: &CliquePlan) -> Result<Construction> {
    let k = plan.block;
    let graph = WeightedGraph::from_fn(plan.n, |_, j| if j < k { 1.0 } else { plan.p })?;
    let test_vector = (0..plan.n).map(|i| if i < k { 1.0 } else { 0.0 }).collect();
    Ok(Construction {
        kind: plan.kind,
        p: plan.p,
        delta: plan.delta,
        graph,
        test_vector,
        z: None,
        s: Some(plan.s),
        block: k,
        entropy: plan.entropy,
        achieved: plan.achieved,
        threshold: plan.threshold,
    })
}

pub fn build_clique(n: usize, p: f64, delta: f64) -> Result<Construction> {
    materialize_block(&clique_plan(n, p, delta)?)
}

pub fn build_centered_clique(n: usize, p: f64, delta: f64) -> Result<Construction> {
    materialize_block(&centered_clique_plan(n, p, delta)?)
}

pub fn build_anticlique(n: usize, p: f64, delta: f64) -> Result<Construction> {
    materialize_anticlique(&anticlique_plan(n, p, delta)?)
}

/// Anti-clique with a prescribed hub size; `hub = 0` gives the constant graph.
pub fn anticlique_with_hub(n: usize, p: f64, delta: f64, hub: usize) -> Result<Construction> {
    materialize_anticlique(&anticlique_plan_with_hub(n, p, delta, hub)?)
}

fn materialize_anticlique(plan: &AnticliquePlan) -> Result<Construction> {
    let h = plan.hub;
    let graph = WeightedGraph::from_fn(plan.n, |i, _| if i < h { 1.0 } else { plan.p })?;
    let c = (1.0 + plan.delta) * plan.p;
    let test_vector = (0..plan.n).map(|i| if i < h { 1.0 } else { c }).collect();
    Ok(Construction {
        kind: ConstructionKind::Anticlique,
        p: plan.p,
        delta: plan.delta,
        graph,
        test_vector,
        z: Some(plan.z),
        s: None,
        block: h,
        entropy: plan.entropy,
        achieved: plan.rayleigh,
        threshold: plan.threshold,
    })
}

/// Independent recomputation of a construction's certificate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyReport {
    pub kind: ConstructionKind,
    /// Statistic from a full eigensolve (`λ₁` or the centered operator norm).
    pub eigensolve: f64,
    /// Rayleigh quotient of the test vector, recomputed from the matrix.
    pub rayleigh: f64,
    pub achieved: f64,
    pub threshold: f64,
    /// `achieved >= threshold`.
    pub feasible: bool,
}

/// Checks `rayleigh == achieved`, `rayleigh <= eigensolve` and reports
/// whether the threshold is met. Violations of the first two are bugs and
/// come back as [`Error::Certificate`].
pub fn certify(c: &Construction) -> Result<CertifyReport> {
    let norm_sq: f64 = c.test_vector.iter().map(|x| x * x).sum();
    if norm_sq.is_nan() || norm_sq <= 0.0 {
        return Err(Error::Certificate("test vector is zero".into()));
    }
    let quad = c.graph.quadratic_form(&c.test_vector);
    let (eigensolve, rayleigh) = match c.kind {
        ConstructionKind::Clique | ConstructionKind::Anticlique => {
            (lambda1(&c.graph)?, quad / norm_sq)
        }
        ConstructionKind::CenteredClique => {
            let sum: f64 = c.test_vector.iter().sum();
            (
                centered_opnorm(&c.graph, c.p)?,
                (quad - c.p * sum * sum) / norm_sq,
            )
        }
    };
    let scale = c.achieved.abs().max(1.0);
    if (rayleigh - c.achieved).abs() > 1e-9 * scale {
        return Err(Error::Certificate(format!(
            "{}: recomputed Rayleigh {rayleigh} differs from claimed {}",
            c.kind, c.achieved
        )));
    }
    if rayleigh > eigensolve + 1e-8 * scale {
        return Err(Error::Certificate(format!(
            "{}: Rayleigh {rayleigh} exceeds eigensolve {eigensolve}",
            c.kind
        )));
    }
    Ok(CertifyReport {
        kind: c.kind,
        eigensolve,
        rayleigh,
        achieved: c.achieved,
        threshold: c.threshold,
        feasible: c.achieved >= c.threshold - THRESHOLD_GUARD,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{ip_graph, ip_scalar};

    #[test]
    fn clique_instance() {
        let c = build_clique(100, 0.1, 1.0).unwrap();
        assert_eq!(c.block, 21);
        assert_eq!(c.achieved, 20.0);
        let expected = 210.0 * ip_scalar(1.0, 0.1).unwrap();
        assert_eq!(c.entropy.value.to_bits(), expected.to_bits());
        assert!((c.entropy.value - 483.542_869_528_749_6).abs() < 1e-9);
        assert!((c.entropy.normalized - 2.1).abs() < 1e-12);
        let direct = ip_graph(&c.graph, 0.1).unwrap().value;
        assert!((direct - c.entropy.value).abs() < 1e-10 * direct);

        let r = certify(&c).unwrap();
        assert!(r.eigensolve >= 20.0 && r.feasible);
        assert_eq!(r.rayleigh, 20.0);
    }

    #[test]
    fn minimal_clique() {
        let c = build_clique(10, 0.05, 0.1).unwrap();
        assert_eq!(c.block, 2);
        assert_eq!(c.achieved, 1.0);
        assert!(certify(&c).unwrap().feasible);
    }

    #[test]
    fn clique_must_fit() {
        assert!(matches!(
            build_clique(10, 0.9, 1.0),
            Err(Error::Infeasible(_))
        ));
        assert!(build_clique(10, 0.0, 1.0).is_err());
    }

    #[test]
    fn centered_clique_instance() {
        let c = build_centered_clique(200, 0.1, 0.5).unwrap();
        assert!((c.s.unwrap() - 10.2 / 0.9).abs() < 1e-12);
        assert_eq!(c.block, 13);
        assert!((c.achieved - 10.7).abs() < 1e-12);
        let r = certify(&c).unwrap();
        assert!(r.eigensolve >= 10.7 && r.feasible);
        let expected = 78.0 * ip_scalar(1.0, 0.1).unwrap();
        assert_eq!(c.entropy.value, expected);
    }

    #[test]
    fn centered_size_tends_to_delta_np() {
        let (n, delta) = (1_000_000usize, 0.5);
        for p in [1e-2, 1e-3, 1e-4] {
            let plan = centered_clique_plan(n, p, delta).unwrap();
            let target = delta * n as f64 * p;
            assert!((plan.s / target - 1.0).abs() < 2.0 * p + 2.0 / (n as f64));
        }
    }

    #[test]
    fn anticlique_small_instance_certifies() {
        let c = build_anticlique(40, 0.2, 0.3).unwrap();
        assert_eq!(c.block, 1);
        assert_eq!(c.z, Some(0.625));
        let r = certify(&c).unwrap();
        assert!(r.feasible && r.eigensolve >= r.rayleigh);
        let direct = ip_graph(&c.graph, 0.2).unwrap().value;
        assert!((direct - c.entropy.value).abs() < 1e-10 * direct);
        assert!((c.entropy.normalized - 0.609_375).abs() < 1e-12);
    }

    #[test]
    fn anticlique_z_approaches_eta() {
        // n p² = 100 at p = 1e-3, so the hub holds z·100 vertices.
        let n = 100_000_000;
        for delta in [0.5, 1.0, 2.0] {
            let plan = anticlique_plan(n, 1e-3, delta).unwrap();
            let eta = delta * (1.0 + delta);
            assert!(plan.hub >= 50);
            assert!(
                (plan.z / eta - 1.0).abs() < 0.05,
                "delta={delta}: z={}",
                plan.z
            );
            assert!((plan.entropy.normalized / eta - 1.0).abs() < 0.05);
        }
        let plan = anticlique_plan(n, 1e-3, 0.5).unwrap();
        assert!((plan.z - 0.75).abs() < 0.02 * 0.75);
    }

    #[test]
    fn empty_hub_is_infeasible() {
        let c = anticlique_with_hub(50, 0.1, 0.5, 0).unwrap();
        let r = certify(&c).unwrap();
        assert!(!r.feasible);
        assert!(c.achieved < c.threshold);
        assert_eq!(c.entropy.value, 0.0);
    }

    #[test]
    fn entropies_cross_at_delta_one() {
        let (n, p) = (1_000_000, 0.01);
        let below_c = clique_plan(n, p, 0.9).unwrap().entropy.normalized;
        let below_a = anticlique_plan(n, p, 0.9).unwrap().entropy.normalized;
        assert!(below_a < below_c, "{below_a} vs {below_c}");
        let above_c = clique_plan(n, p, 1.1).unwrap().entropy.normalized;
        let above_a = anticlique_plan(n, p, 1.1).unwrap().entropy.normalized;
        assert!(above_c < above_a, "{above_c} vs {above_a}");
    }

    #[test]
    fn clique_entropy_near_rate() {
        let plan = clique_plan(100_000, 1e-3, 1.0).unwrap();
        assert!((plan.entropy.normalized - 2.0).abs() < 0.05);
    }
}
