use thiserror::Error;

use crate::varsolve::Certificate;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// A construction or problem instance does not exist for these parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The eigenvalue needed for a gradient is not simple.
    #[error("degenerate eigenvalue: gap {gap:e} is below {tol:e}")]
    Degenerate { gap: f64, tol: f64 },

    /// A numerical routine failed or two independent routes disagreed.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A construction's certificate did not hold; this indicates a bug.
    #[error("certificate violation: {0}")]
    Certificate(String),

    /// The variational solver exhausted its budget without a feasible point.
    #[error("solver did not reach feasibility (best slack {:e})", .best.slack)]
    NotConverged { best: Box<Certificate> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

/// Checks `p` lies in the open unit interval.
pub(crate) fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(invalid(format!("p = {p} must lie in (0, 1)")))
    }
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("delta = {delta} must be positive")))
    }
}

pub(crate) fn check_even(s: usize) -> Result<()> {
    if s >= 2 && s.is_multiple_of(2) {
        Ok(())
    } else {
        Err(invalid(format!("s = {s} must be an even integer >= 2")))
    }
}
