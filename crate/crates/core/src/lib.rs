//! Numerical laboratory for upper-tail large deviations of the edge
//! eigenvalues of sparse Erdős–Rényi graphs.
//!
//! The crate is organised around the objects that appear in the analysis:
//!
//! | module | contents |
//! |--------|----------|
//! | [`graph`], [`spectral`] | weighted graphs, spectra, Schatten/cycle densities, centered operator norm |
//! | [`oracle`] | exact tail probabilities by enumerating every graph on `n <= 6` vertices |
//! | [`entropy`] | the Bernoulli relative entropy `I_p` and its estimates |
//! | [`rates`] | independence polynomials of cycles, `θ̄`, `η`, closed-form rates |
//! | [`constructions`] | clique, anti-clique and centered-clique planted graphs |
//! | [`varsolve`] | penalty descent for the discrete variational problems |
//! | [`montecarlo`] | G(n, p) sampling and tail estimation |
//! | [`graphon`] | step graphons, signed cycle densities, degree thresholding |
//! | [`cli`] | the batch front end behind the `spectral-ldp` binary |
//!
//! Rates are reported in normalized units, i.e. divided by `n² p² log(1/p)`
//! with natural logarithms.

pub mod cli;
pub mod constructions;
pub mod entropy;
mod error;
pub mod graph;
pub mod graphon;
mod linalg;
pub mod montecarlo;
pub mod oracle;
pub mod rates;
pub mod spectral;
pub mod varsolve;

pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use spectral::{Spectrum, Statistic};

/// A two-sided inequality `lhs <= rhs` evaluated numerically.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPair {
    pub lhs: f64,
    pub rhs: f64,
}

impl BoundPair {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}
