//! Dense symmetric eigensolver and trace-power helpers shared by the graph
//! and graphon code.

use faer::{Mat, Side};

use crate::error::{Error, Result};

/// Eigendecomposition of a symmetric matrix with eigenvalues sorted
/// non-increasing; `vectors` column `k` belongs to `values[k]`.
pub(crate) struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Mat<f64>,
}

impl SymEigen {
    /// Eigenvector `k`, sign-normalized so its largest-magnitude entry is positive.
    pub fn vector(&self, k: usize) -> Vec<f64> {
        let col = self.vectors.col(k);
        let mut v: Vec<f64> = (0..col.nrows()).map(|i| col[i]).collect();
        normalize_sign(&mut v);
        v
    }
}

pub(crate) fn to_mat(n: usize, data: &[f64]) -> Mat<f64> {
    Mat::from_fn(n, n, |i, j| data[i * n + j])
}

pub(crate) fn sym_eigen(n: usize, data: &[f64]) -> Result<SymEigen> {
    let m = to_mat(n, data);
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigendecomposition failed: {e:?}")))?;
    let s = evd.S();
    let u = evd.U();
    // faer returns ascending order.
    let values: Vec<f64> = (0..n).rev().map(|k| s[k]).collect();
    let vectors = Mat::from_fn(n, n, |i, k| u[(i, n - 1 - k)]);
    Ok(SymEigen { values, vectors })
}

/// Eigenvalues only, sorted non-increasing.
pub(crate) fn sym_eigenvalues(n: usize, data: &[f64]) -> Result<Vec<f64>> {
    let m = to_mat(n, data);
    let mut values = m
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Numerical(format!("eigenvalue computation failed: {e:?}")))?;
    values.reverse();
    Ok(values)
}

/// Largest absolute eigenvalue.
pub(crate) fn spectral_radius(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()))
}

/// `Σ_k (λ_k / scale)^s`.
pub(crate) fn trace_power_from_values(values: &[f64], scale: f64, s: usize) -> f64 {
    values.iter().map(|&l| (l / scale).powi(s as i32)).sum()
}

/// `trace((M / scale)^s)` for even `s` by repeated multiplication:
/// with `B = (M / scale)^{s/2}` symmetric, the trace is `Σ B_ij²`.
pub(crate) fn trace_power_by_products(n: usize, data: &[f64], scale: f64, s: usize) -> f64 {
    debug_assert!(s >= 2 && s.is_multiple_of(2));
    let base = Mat::from_fn(n, n, |i, j| data[i * n + j] / scale);
    let mut b = base.clone();
    for _ in 1..s / 2 {
        b = &b * &base;
    }
    let mut total = 0.0;
    for j in 0..n {
        for i in 0..n {
            total += b[(i, j)] * b[(i, j)];
        }
    }
    total
}

/// Relative agreement test with an absolute floor for exact zeros.
pub(crate) fn agree(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + f64::MIN_POSITIVE
}

pub(crate) fn normalize_sign(v: &mut [f64]) {
    let mut best = 0.0f64;
    let mut sign = 1.0;
    for &x in v.iter() {
        if x.abs() > best + 1e-14 {
            best = x.abs();
            sign = x.signum();
        }
    }
    if sign < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_order_and_vectors() {
        // [[2,1],[1,2]] has eigenvalues 3 and 1.
        let e = sym_eigen(2, &[2.0, 1.0, 1.0, 2.0]).unwrap();
        assert!((e.values[0] - 3.0).abs() < 1e-12);
        assert!((e.values[1] - 1.0).abs() < 1e-12);
        let v = e.vector(0);
        assert!((v[0] - v[1]).abs() < 1e-12 && v[0] > 0.0);
    }

    #[test]
    fn trace_routes_agree() {
        let data = [0.0, 0.3, 0.7, 0.3, 0.0, 0.2, 0.7, 0.2, 0.0];
        let vals = sym_eigenvalues(3, &data).unwrap();
        for s in [2, 4, 6, 8] {
            let a = trace_power_from_values(&vals, 3.0, s);
            let b = trace_power_by_products(3, &data, 3.0, s);
            assert!(agree(a, b, 1e-10), "s={s}: {a} vs {b}");
        }
    }
}
