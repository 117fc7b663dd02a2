//! Symmetric edge-weighted graphs with weights in `[0, 1]`.

use crate::error::{invalid, Result};

/// Tolerance on the `[0, 1]` range check; values inside it are clamped.
pub const RANGE_TOL: f64 = 1e-12;

/// A weighted undirected graph on `n` vertices: a symmetric `n × n` matrix
/// with entries in `[0, 1]` and zero diagonal, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    weights: Vec<f64>,
}

impl WeightedGraph {
    /// Largest vertex count accepted (dense storage bound).
    pub const MAX_VERTICES: usize = 10_000;

    /// Validates and wraps a row-major weight matrix.
    pub fn new(n: usize, mut weights: Vec<f64>) -> Result<Self> {
        check_size(n)?;
        if weights.len() != n * n {
            return Err(invalid(format!(
                "weight matrix has {} entries, expected {}",
                weights.len(),
                n * n
            )));
        }
        for i in 0..n {
            if weights[i * n + i] != 0.0 {
                return Err(invalid(format!("diagonal entry ({i},{i}) is non-zero")));
            }
            for j in (i + 1)..n {
                let (a, b) = (weights[i * n + j], weights[j * n + i]);
                if a != b {
                    return Err(invalid(format!(
                        "weights not symmetric at ({i},{j}): {a} vs {b}"
                    )));
                }
                let w = clamp_weight(a)
                    .ok_or_else(|| invalid(format!("weight {a} at ({i},{j}) outside [0, 1]")))?;
                weights[i * n + j] = w;
                weights[j * n + i] = w;
            }
        }
        Ok(Self { n, weights })
    }

    /// Builds a graph from a function evaluated on each pair `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_size(n)?;
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let a = f(i, j);
                let w = clamp_weight(a)
                    .ok_or_else(|| invalid(format!("weight {a} at ({i},{j}) outside [0, 1]")))?;
                weights[i * n + j] = w;
                weights[j * n + i] = w;
            }
        }
        Ok(Self { n, weights })
    }

    /// Builds a graph from the strict upper triangle listed row by row.
    pub fn from_upper(n: usize, upper: &[f64]) -> Result<Self> {
        if upper.len() != pair_count(n) {
            return Err(invalid(format!(
                "upper triangle has {} entries, expected {}",
                upper.len(),
                pair_count(n)
            )));
        }
        let mut k = 0;
        Self::from_fn(n, |_, _| {
            k += 1;
            upper[k - 1]
        })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| 0.0)
    }

    /// Every off-diagonal weight equal to `c`.
    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::from_fn(n, |_, _| c)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::constant(n, 1.0)
    }

    /// 0/1 graph with the given edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut weights = vec![0.0; n * n];
        for &(i, j) in edges {
            if i >= n || j >= n || i == j {
                return Err(invalid(format!("edge ({i},{j}) invalid for n = {n}")));
            }
            weights[i * n + j] = 1.0;
            weights[j * n + i] = 1.0;
        }
        Self::new(n, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[i * self.n + j]
    }

    /// Row-major weight matrix.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Strict upper triangle, row by row.
    pub fn upper(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = Vec::with_capacity(pair_count(n));
        for i in 0..n {
            out.extend_from_slice(&self.weights[i * n + i + 1..(i + 1) * n]);
        }
        out
    }

    /// `v' A v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        assert_eq!(v.len(), self.n, "vector length must equal vertex count");
        let n = self.n;
        let mut total = 0.0;
        for i in 0..n {
            let row = &self.weights[i * n..(i + 1) * n];
            let dot: f64 = row.iter().zip(v).map(|(a, x)| a * x).sum();
            total += v[i] * dot;
        }
        total
    }

    /// Sum of the weights incident to each vertex.
    pub fn degrees(&self) -> Vec<f64> {
        self.weights
            .chunks(self.n)
            .map(|row| row.iter().sum())
            .collect()
    }
}

/// Number of unordered vertex pairs, `C(n, 2)`.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("graph must have at least one vertex"));
    }
    if n > WeightedGraph::MAX_VERTICES {
        return Err(invalid(format!(
            "n = {n} exceeds the dense limit of {} vertices",
            WeightedGraph::MAX_VERTICES
        )));
    }
    Ok(())
}

fn clamp_weight(a: f64) -> Option<f64> {
    if a.is_nan() || !(-RANGE_TOL..=1.0 + RANGE_TOL).contains(&a) {
        None
    } else {
        Some(a.clamp(0.0, 1.0))
    }
}
