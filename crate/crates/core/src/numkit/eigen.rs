//! Cyclic Jacobi eigensolver for small symmetric matrices.

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition `M = Q diag(values) Q^t`, values ascending, the
/// eigenvectors stored as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl SymEigen {
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }

    pub fn vector_list(&self) -> Vec<Vec<f64>> {
        (0..self.values.len()).map(|i| self.vector(i)).collect()
    }
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Converges when the off-diagonal Frobenius norm drops below
/// `tol * ||M||_F`.
pub fn sym_eigen(m: &DenseMatrix, tol: f64) -> Result<SymEigen> {
    if !m.is_square() {
        return Err(Error::validation(format!("eigensolver needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let scale = m.frobenius_norm();
    if !scale.is_finite() {
        return Err(Error::validation("matrix has non-finite entries"));
    }
    if m.symmetry_residual() > 1e-12 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::validation(format!("matrix is not symmetric (residual {:e})", m.symmetry_residual())));
    }

    let n = m.rows();
    let mut a = m.symmetrized();
    let mut v = DenseMatrix::<f64>::identity(n);
    let threshold = tol * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = DenseMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymEigen { values, vectors })
}
