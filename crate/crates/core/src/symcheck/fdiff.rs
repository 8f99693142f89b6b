use super::model::ConnectionModel;
use crate::error::{Error, Result};
use crate::numkit::{sym_eigen, vecops, DenseMatrix, DEFAULT_EIGEN_TOL};

/// Default central-difference step.
pub const FD_STEP: f64 = 1e-5;

/// Outcome of comparing `nabla_r` with a difference quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct FdComparison {
    pub analytic: Vec<f64>,
    pub finite_difference: Vec<f64>,
    pub max_abs_error: f64,
    /// `|[Omega, J_i] - nabla_W J_i|` summed in quadrature over `i`; zero
    /// when the model derivative is tangent to the orbit of the family.
    pub fit_residual: f64,
}

fn so_basis(n: usize) -> Vec<DenseMatrix> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            out.push(DenseMatrix::from_fn(n, n, |r, c| {
                if (r, c) == (a, b) {
                    1.0
                } else if (r, c) == (b, a) {
                    -1.0
                } else {
                    0.0
                }
            }));
        }
    }
    out
}

/// Least-squares `Omega` in `so(n)` with `[Omega, J_i] ~ D_i` for all `i`.
/// Returns `Omega` and the fit residual.
pub fn fit_rotation_generator(ops: &[DenseMatrix], targets: &[DenseMatrix]) -> Result<(DenseMatrix, f64)> {
    if ops.len() != targets.len() || ops.is_empty() {
        return Err(Error::validation("one target per operator required"));
    }
    let n = ops[0].rows();
    let basis = so_basis(n);
    let images: Vec<Vec<f64>> =
        basis.iter().map(|e| ops.iter().flat_map(|j| (&(e * j) - &(j * e)).data().to_vec()).collect()).collect();
    let d: Vec<f64> = targets.iter().flat_map(|t| t.data().to_vec()).collect();
    let k = basis.len();
    let normal = DenseMatrix::from_fn(k, k, |a, b| vecops::dot(&images[a], &images[b]));
    let rhs: Vec<f64> = images.iter().map(|img| vecops::dot(img, &d)).collect();
    let eig = sym_eigen(&normal, DEFAULT_EIGEN_TOL)?;
    let top = eig.values.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    let mut coef = vec![0.0; k];
    for (idx, &val) in eig.values.iter().enumerate() {
        if val.abs() > 1e-12 * top {
            let v = eig.vector(idx);
            vecops::axpy(&mut coef, vecops::dot(&v, &rhs) / val, &v);
        }
    }
    let omega = basis.iter().zip(&coef).fold(DenseMatrix::zeros(n, n), |acc, (e, c)| &acc + &e.scale(c));
    let mut fit = d;
    for (img, c) in images.iter().zip(&coef) {
        vecops::axpy(&mut fit, -c, img);
    }
    Ok((omega, vecops::norm(&fit)))
}

/// `exp(A)` by scaling and squaring with a Taylor kernel.
pub fn expm(a: &DenseMatrix) -> DenseMatrix {
    let n = a.rows();
    let norm = a.frobenius_norm();
    let mut squarings = 0;
    let mut s = 1.0;
    while norm * s > 0.5 {
        s *= 0.5;
        squarings += 1;
    }
    let a = a.scale(&s);
    let mut term = DenseMatrix::identity(n);
    let mut sum = DenseMatrix::identity(n);
    for k in 1..=16 {
        term = (&term * &a).scale(&(1.0 / k as f64));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn jacobi_action(ops: &[DenseMatrix], lambda: &[f64], v: &[f64], z: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len()];
    for (j, l) in ops.iter().zip(lambda) {
        let jv = j.matvec(v);
        vecops::axpy(&mut out, l * vecops::dot(&jv, z), &jv);
    }
    out
}

/// Compares `(nabla_W R)(V,Z)V` with a central difference of the
/// Clifford-assembled tensor along `J_i(t) = exp(t Omega) J_i exp(-t Omega)`,
/// where `Omega` is fitted to `nabla_W J_i`.
pub fn finite_difference_check(
    model: &ConnectionModel,
    w: &[f64],
    v: &[f64],
    z: &[f64],
    step: f64,
) -> Result<FdComparison> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::validation("step must be positive"));
    }
    let ops = model.family().ops();
    let (omega, fit_residual) = fit_rotation_generator(ops, &model.nabla_all(w))?;
    let at = |t: f64| {
        let e = expm(&omega.scale(&t));
        let et = e.transpose();
        let moved: Vec<DenseMatrix> = ops.iter().map(|j| &(&e * j) * &et).collect();
        jacobi_action(&moved, model.lambda(), v, z)
    };
    let fd = vecops::scale(&vecops::sub(&at(step), &at(-step)), 0.5 / step);
    let analytic = model.nabla_r(w, v, z);
    let max_abs_error = vecops::max_abs(&vecops::sub(&fd, &analytic));
    Ok(FdComparison { analytic, finite_difference: fd, max_abs_error, fit_residual })
}
