use crate::curvature::AlgebraicCurvatureTensor;
use crate::error::{Error, Result};
use crate::numkit::{vecops, DenseMatrix};

/// Smallest admissible `|rho|` in [`eigenprojection_w`].
pub const RHO_TOL: f64 = 1e-12;
/// Eigenvalues closer than this count as the zero eigenvalue.
pub const ZERO_TOL: f64 = 1e-12;

/// `W_X = rho^{-1} R_X prod_alpha (R_X - lambda_alpha |X|^2 I)` with
/// `rho = lambda prod_alpha (lambda - lambda_alpha)`, the product running
/// over the non-zero eigenvalues other than `lambda = spectrum[target]`.
///
/// For a tensor whose Jacobi operator has constant eigenvalues `spectrum`
/// (one of them zero), `W_X` is `|X|^{2k-2}` times the orthogonal projector
/// onto the `lambda |X|^2` eigenspace of `R_X`, `k = spectrum.len()`.
pub fn eigenprojection_w(
    r: &AlgebraicCurvatureTensor,
    spectrum: &[f64],
    target: usize,
    x: &[f64],
) -> Result<DenseMatrix> {
    let lambda = *spectrum
        .get(target)
        .ok_or_else(|| Error::validation(format!("target index {target} outside the spectrum")))?;
    if !spectrum.iter().any(|v| v.abs() < ZERO_TOL) {
        return Err(Error::validation("the spectrum must contain the eigenvalue 0"));
    }
    if lambda.abs() < ZERO_TOL {
        return Err(Error::validation("the target eigenvalue must be non-zero"));
    }
    let others: Vec<f64> =
        spectrum.iter().enumerate().filter(|&(i, v)| i != target && v.abs() >= ZERO_TOL).map(|(_, &v)| v).collect();
    let rho = others.iter().fold(lambda, |acc, l| acc * (lambda - l));
    if rho.abs() < RHO_TOL {
        return Err(Error::Degenerate(format!("rho = {rho:e}: eigenvalues coincide with the target")));
    }
    let n = r.dim();
    let rx = r.jacobi(x)?;
    let n2 = vecops::dot(x, x);
    let mut w = rx.clone();
    for l in &others {
        let factor = &rx - &DenseMatrix::identity(n).scale(&(l * n2));
        w = &w * &factor;
    }
    Ok(w.scale(&(1.0 / rho)))
}
