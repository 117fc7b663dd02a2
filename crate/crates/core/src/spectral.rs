//! Spectra of weighted graphs: eigenvalues, the top eigenvector, cycle
//! homomorphism densities, Schatten bounds and the centered operator norm.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_even, check_p, invalid, Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::{
    agree, spectral_radius, sym_eigen, sym_eigenvalues, trace_power_by_products,
    trace_power_from_values,
};
use crate::BoundPair;

/// Slack applied to every `statistic >= threshold` comparison so that
/// floating-point ties (e.g. `λ₁(K₃) = 2`) are counted as hits.
pub const THRESHOLD_GUARD: f64 = 1e-9;

/// Relative agreement required between the eigenvalue and matrix-power
/// routes for cycle densities.
pub const TRACE_AGREEMENT: f64 = 1e-8;

/// Full spectrum of a weighted graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues sorted non-increasing.
    pub eigenvalues: Vec<f64>,
    /// Unit eigenvector for `eigenvalues[0]`, largest entry positive.
    pub top_vector: Vec<f64>,
}

impl Spectrum {
    pub fn lambda1(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda2(&self) -> Option<f64> {
        self.eigenvalues.get(1).copied()
    }

    /// `λ₁ − λ₂`, infinite for a single vertex.
    pub fn top_gap(&self) -> f64 {
        self.lambda2()
            .map_or(f64::INFINITY, |l2| self.lambda1() - l2)
    }
}

pub fn spectrum(g: &WeightedGraph) -> Result<Spectrum> {
    let evd = sym_eigen(g.n(), g.weights())?;
    let top_vector = evd.vector(0);
    Ok(Spectrum {
        eigenvalues: evd.values,
        top_vector,
    })
}

/// Eigenvalues only, sorted non-increasing.
pub fn eigenvalues(g: &WeightedGraph) -> Result<Vec<f64>> {
    sym_eigenvalues(g.n(), g.weights())
}

pub fn lambda1(g: &WeightedGraph) -> Result<f64> {
    Ok(eigenvalues(g)?[0])
}

/// Second largest eigenvalue; a single vertex has none.
pub fn lambda2(g: &WeightedGraph) -> Result<f64> {
    eigenvalues(g)?
        .get(1)
        .copied()
        .ok_or_else(|| invalid("lambda2 needs at least two vertices"))
}

/// `t(C_s, G) = n^{-s} trace(A^s)` via eigenvalue powers.
pub fn cycle_density_by_eigenvalues(g: &WeightedGraph, s: usize) -> Result<f64> {
    check_even(s)?;
    let vals = eigenvalues(g)?;
    Ok(trace_power_from_values(&vals, g.n() as f64, s))
}

/// `t(C_s, G)` via repeated matrix multiplication.
pub fn cycle_density_by_powers(g: &WeightedGraph, s: usize) -> Result<f64> {
    check_even(s)?;
    Ok(trace_power_by_products(g.n(), g.weights(), g.n() as f64, s))
}

/// Homomorphism density of the `s`-cycle, `n^{-s} Σ_j λ_j^s`.
///
/// Both routes are evaluated; a disagreement beyond [`TRACE_AGREEMENT`]
/// is reported as a numerical failure.
pub fn cycle_density(g: &WeightedGraph, s: usize) -> Result<f64> {
    let by_eig = cycle_density_by_eigenvalues(g, s)?;
    let by_pow = cycle_density_by_powers(g, s)?;
    if !agree(by_eig, by_pow, TRACE_AGREEMENT) {
        return Err(Error::Numerical(format!(
            "cycle density routes disagree for s = {s}: {by_eig:e} vs {by_pow:e}"
        )));
    }
    Ok(by_eig)
}

/// `(λ₁/n)^s <= t(C_s, G)` for even `s`.
pub fn schatten_bound_check(g: &WeightedGraph, s: usize) -> Result<BoundPair> {
    check_even(s)?;
    let vals = eigenvalues(g)?;
    let lhs = (vals[0] / g.n() as f64).powi(s as i32);
    let rhs = cycle_density(g, s)?;
    Ok(BoundPair { lhs, rhs })
}

/// `A − p 𝟙𝟙'` as a row-major matrix; the diagonal becomes `−p`.
pub fn centered_matrix(g: &WeightedGraph, p: f64) -> Vec<f64> {
    g.weights().iter().map(|a| a - p).collect()
}

/// `‖A(G) − p 𝟙𝟙'‖_op`, the largest absolute eigenvalue of the centered matrix.
pub fn centered_opnorm(g: &WeightedGraph, p: f64) -> Result<f64> {
    check_p(p)?;
    let vals = sym_eigenvalues(g.n(), &centered_matrix(g, p))?;
    Ok(spectral_radius(&vals))
}

/// Extreme eigenpair of a centered matrix.
#[derive(Clone, Debug)]
pub struct ExtremePair {
    /// Signed eigenvalue with the largest magnitude.
    pub value: f64,
    pub vector: Vec<f64>,
    /// Distance in magnitude to the next-largest `|λ|`.
    pub gap: f64,
}

/// Eigenpair of `A − p𝟙𝟙'` achieving the operator norm.
pub fn centered_extreme_pair(g: &WeightedGraph, p: f64) -> Result<ExtremePair> {
    check_p(p)?;
    let n = g.n();
    let evd = sym_eigen(n, &centered_matrix(g, p))?;
    let (top, bottom) = (evd.values[0], evd.values[n - 1]);
    let (k, value) = if top.abs() >= bottom.abs() {
        (0, top)
    } else {
        (n - 1, bottom)
    };
    let mut mags: Vec<f64> = evd.values.iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    let gap = if n > 1 {
        mags[0] - mags[1]
    } else {
        f64::INFINITY
    };
    Ok(ExtremePair {
        value,
        vector: evd.vector(k),
        gap,
    })
}

/// Spectral statistics used by tail events and the variational problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Statistic {
    /// Largest eigenvalue `λ₁`.
    Lambda1,
    /// Second largest eigenvalue `λ₂`.
    Lambda2,
    /// `‖A − p𝟙𝟙'‖_op`.
    CenteredOpnorm,
}

impl Statistic {
    pub fn evaluate(self, g: &WeightedGraph, p: f64) -> Result<f64> {
        match self {
            Statistic::Lambda1 => lambda1(g),
            Statistic::Lambda2 => lambda2(g),
            Statistic::CenteredOpnorm => centered_opnorm(g, p),
        }
    }

    /// `value >= threshold` with the [`THRESHOLD_GUARD`] slack.
    pub fn meets(value: f64, threshold: f64) -> bool {
        value >= threshold - THRESHOLD_GUARD
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Lambda1 => "lambda1",
            Statistic::Lambda2 => "lambda2",
            Statistic::CenteredOpnorm => "centered",
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda1" => Ok(Statistic::Lambda1),
            "lambda2" => Ok(Statistic::Lambda2),
            "centered" | "centered-opnorm" => Ok(Statistic::CenteredOpnorm),
            other => Err(invalid(format!(
                "unknown statistic '{other}' (expected lambda1, lambda2 or centered)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::complete(3).unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn triangle_spectrum() {
        let sp = spectrum(&triangle()).unwrap();
        assert_close(sp.eigenvalues[0], 2.0, 1e-12);
        assert_close(sp.eigenvalues[1], -1.0, 1e-12);
        assert_close(sp.eigenvalues[2], -1.0, 1e-12);
        for x in &sp.top_vector {
            assert_close(*x, 1.0 / 3f64.sqrt(), 1e-12);
        }
    }

    #[test]
    fn zero_and_single_edge_spectra() {
        let z = spectrum(&WeightedGraph::empty(4).unwrap()).unwrap();
        assert!(z.eigenvalues.iter().all(|&x| x.abs() < 1e-15));
        let e = spectrum(&WeightedGraph::from_edges(2, &[(0, 1)]).unwrap()).unwrap();
        assert_close(e.eigenvalues[0], 1.0, 1e-14);
        assert_close(e.eigenvalues[1], -1.0, 1e-14);
    }

    #[test]
    fn single_vertex() {
        let g = WeightedGraph::empty(1).unwrap();
        let sp = spectrum(&g).unwrap();
        assert_eq!(sp.eigenvalues, vec![0.0]);
        assert_eq!(sp.top_gap(), f64::INFINITY);
        assert!(lambda2(&g).is_err());
    }

    #[test]
    fn triangle_cycle_density() {
        let t = cycle_density(&triangle(), 4).unwrap();
        assert_close(t, 18.0 / 81.0, 1e-14);
        assert!(cycle_density(&triangle(), 3).is_err());
        assert_eq!(
            cycle_density(&WeightedGraph::empty(5).unwrap(), 6).unwrap(),
            0.0
        );
    }

    #[test]
    fn s2_density_is_frobenius() {
        let g = WeightedGraph::from_fn(5, |i, j| ((i * 3 + j * 7) % 10) as f64 / 10.0).unwrap();
        let sum_sq: f64 = g.upper().iter().map(|a| a * a).sum();
        assert_close(cycle_density(&g, 2).unwrap(), 2.0 * sum_sq / 25.0, 1e-14);
    }

    #[test]
    fn schatten_examples() {
        let b = schatten_bound_check(&triangle(), 4).unwrap();
        assert_close(b.lhs, 16.0 / 81.0, 1e-14);
        assert_close(b.rhs, 18.0 / 81.0, 1e-14);
        assert!(b.lhs < b.rhs);
        let e = schatten_bound_check(&WeightedGraph::from_edges(2, &[(0, 1)]).unwrap(), 2).unwrap();
        assert_close(e.lhs, 0.25, 1e-14);
        assert_close(e.rhs, 0.5, 1e-14);
        let z = schatten_bound_check(&WeightedGraph::empty(3).unwrap(), 2).unwrap();
        assert_eq!((z.lhs, z.rhs), (0.0, 0.0));
    }

    #[test]
    fn centered_examples() {
        let p = 0.3;
        let g = WeightedGraph::constant(6, p).unwrap();
        assert_close(centered_opnorm(&g, p).unwrap(), p, 1e-13);
        let z = WeightedGraph::empty(2).unwrap();
        assert_close(centered_opnorm(&z, 0.5).unwrap(), 1.0, 1e-14);
        let pair = centered_extreme_pair(&z, 0.5).unwrap();
        assert_close(pair.value, -1.0, 1e-14);
        assert!(centered_opnorm(&z, 1.0).is_err());
    }

    #[test]
    fn statistic_parse_and_guard() {
        assert_eq!("lambda2".parse::<Statistic>().unwrap(), Statistic::Lambda2);
        assert!("lambda3".parse::<Statistic>().is_err());
        assert!(Statistic::meets(2.0 - 1e-12, 2.0));
        assert!(!Statistic::meets(1.99, 2.0));
    }
}
