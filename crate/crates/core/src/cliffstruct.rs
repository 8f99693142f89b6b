//! Curvature tensors with a Clifford structure
//!
//! `R(X,Y)Z = lambda0 (<X,Z>Y - <Y,Z>X)
//!   + sum_s (mu_s - lambda0)/3 (2<J_sX,Y>J_sZ + <J_sZ,Y>J_sX - <J_sZ,X>J_sY)`
//!
//! with the Jacobi operator
//! `R_X Y = lambda0 (|X|^2 Y - <Y,X> X) + sum_s (mu_s - lambda0) <J_sX,Y> J_sX`.

use serde::Serialize;

use crate::cliffrep::{validate_family, OperatorFamily, FAMILY_TOL};
use crate::curvature::{AlgebraicCurvatureTensor, CurvatureTensor, ExactCurvatureTensor};
use crate::error::{Error, Result};
use crate::numkit::{
    cluster_spectrum, random_orthogonal, rng_from_seed, vecops, Cluster, ClusteredSpectrum, DenseMatrix, SampleRng,
};
use crate::octonion::{j_op, Octonion};
use crate::scalar::{rat_from_f64, Rational};
use rand::Rng;

/// Largest number of operators handled (dimension-eight scope).
pub const MAX_NU: usize = 7;
/// Unit vectors sampled by [`peel_simple`] to check its hypothesis.
pub const PEEL_SAMPLES: usize = 32;
pub const PEEL_TOL: f64 = 1e-10;
/// `mu_s` closer than this to `lambda0` counts as equal.
pub const EIGENVALUE_SEPARATION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordStructure {
    family: OperatorFamily,
    lambda0: f64,
    mu: Vec<f64>,
}

impl CliffordStructure {
    pub fn new(family: OperatorFamily, lambda0: f64, mu: Vec<f64>) -> Result<Self> {
        let n = family.dim();
        let nu = family.len();
        if mu.len() != nu {
            return Err(Error::validation(format!("{nu} operators but {} values of mu", mu.len())));
        }
        if nu > MAX_NU {
            return Err(Error::validation(format!("nu = {nu} exceeds {MAX_NU}")));
        }
        if n < 2 || nu > n - 1 {
            return Err(Error::validation(format!("nu = {nu} too large for R^{n}")));
        }
        if !lambda0.is_finite() || mu.iter().any(|m| !m.is_finite()) {
            return Err(Error::validation("non-finite eigenvalue"));
        }
        if let Some(s) = mu.iter().position(|m| (m - lambda0).abs() <= EIGENVALUE_SEPARATION) {
            return Err(Error::validation(format!("mu_{} equals lambda0 = {lambda0}", s + 1)));
        }
        let verdict = validate_family(&family, FAMILY_TOL);
        if !verdict.pass {
            return Err(Error::validation(format!("invalid family: {}", verdict.failures.join("; "))));
        }
        Ok(Self { family, lambda0, mu })
    }

    pub fn family(&self) -> &OperatorFamily {
        &self.family
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    pub fn nu(&self) -> usize {
        self.family.len()
    }

    /// `{lambda0^(n-1-nu)} ∪ {mu_s}` as `(value, multiplicity)`, ascending.
    pub fn expected_spectrum(&self) -> Vec<(f64, usize)> {
        let mut values: Vec<f64> = self.mu.clone();
        values.extend(std::iter::repeat_n(self.lambda0, self.dim() - 1 - self.nu()));
        values.sort_by(f64::total_cmp);
        let mut out: Vec<(f64, usize)> = Vec::new();
        for v in values {
            match out.last_mut() {
                Some((w, m)) if (*w - v).abs() <= EIGENVALUE_SEPARATION => *m += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

/// Unchecked assembly of `lambda0` space form plus Clifford terms.
pub fn clifford_tensor(n: usize, lambda0: f64, ops: &[DenseMatrix], mu: &[f64]) -> AlgebraicCurvatureTensor {
    let mut r = CurvatureTensor::constant(n, lambda0);
    for (j, m) in ops.iter().zip(mu) {
        r.add_clifford_term(j, &(m - lambda0));
    }
    r
}

pub fn build_cliff(cs: &CliffordStructure) -> Result<AlgebraicCurvatureTensor> {
    let r = clifford_tensor(cs.dim(), cs.lambda0, cs.family.ops(), &cs.mu);
    r.check()?;
    Ok(r)
}

/// Exact copies of family operators whose entries are dyadic doubles.
pub fn exact_family(f: &OperatorFamily) -> Result<Vec<DenseMatrix<Rational>>> {
    f.ops()
        .iter()
        .map(|j| {
            let rows: Option<Vec<Vec<Rational>>> =
                j.to_rows().iter().map(|row| row.iter().map(|&v| rat_from_f64(v)).collect()).collect();
            let rows = rows.ok_or_else(|| Error::validation("non-finite operator entry"))?;
            DenseMatrix::from_rows(&rows)
        })
        .collect()
}

/// Exact assembly over rationals.
pub fn build_cliff_exact(
    ops: &[DenseMatrix<Rational>],
    n: usize,
    lambda0: &Rational,
    mu: &[Rational],
) -> ExactCurvatureTensor {
    let mut r = ExactCurvatureTensor::constant(n, lambda0.clone());
    for (j, m) in ops.iter().zip(mu) {
        r.add_clifford_term(j, &(m - lambda0));
    }
    r
}

/// Closed-form Jacobi action `R_X Y`.
pub fn jacobi_closed(cs: &CliffordStructure, x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vecops::sub(&vecops::scale(y, vecops::dot(x, x)), &vecops::scale(x, vecops::dot(y, x)));
    out = vecops::scale(&out, cs.lambda0);
    for (j, m) in cs.family.ops().iter().zip(&cs.mu) {
        let jx = j.matvec(x);
        vecops::axpy(&mut out, (m - cs.lambda0) * vecops::dot(&jx, y), &jx);
    }
    out
}

/// Eigenspaces of `R_X` on `X^perp` read off from the structure:
/// `E_mu(X) = span{J_s X : mu_s = mu}` and `E_lambda0(X) = span(X, J_s X)^perp`.
pub fn predict_eigenspaces(cs: &CliffordStructure, x: &[f64]) -> Result<ClusteredSpectrum> {
    let nx = vecops::norm(x);
    if (nx - 1.0).abs() > 1e-12 {
        return Err(Error::validation(format!("predict_eigenspaces needs a unit vector, |X| = {nx}")));
    }
    let n = cs.dim();
    let images: Vec<Vec<f64>> = cs.family.ops().iter().map(|j| j.matvec(x)).collect();
    let mut clusters: Vec<Cluster> = Vec::new();
    for (img, &m) in images.iter().zip(&cs.mu) {
        match clusters.iter_mut().find(|c| (c.value - m).abs() <= EIGENVALUE_SEPARATION) {
            Some(c) => {
                c.multiplicity += 1;
                c.basis.push(img.clone());
            }
            None => clusters.push(Cluster { value: m, multiplicity: 1, basis: vec![img.clone()] }),
        }
    }
    if cs.nu() < n - 1 {
        let mut span = vec![x.to_vec()];
        span.extend(images.iter().cloned());
        let rest = vecops::orthogonal_complement(&span, n, 1e-10);
        clusters.push(Cluster { value: cs.lambda0, multiplicity: rest.len(), basis: rest });
    }
    for c in &mut clusters {
        c.basis = vecops::gram_schmidt(&c.basis, 1e-12);
    }
    clusters.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(ClusteredSpectrum { clusters })
}

/// `R + const_curv(n, c)`.
pub fn shift_constant(r: &AlgebraicCurvatureTensor, c: f64) -> AlgebraicCurvatureTensor {
    r.try_add(&CurvatureTensor::constant(r.dim(), c)).expect("same dimension")
}

/// `R_hat = R - lambda1/3 (2<JX,Y>JZ + <JZ,Y>JX - <JZ,X>JY)`, so that
/// `R_hat_X Y = R_X Y - lambda1 <JX,Y> JX`.
///
/// The hypothesis `R_X(JX) = lambda1 |X|^2 JX` is checked at
/// [`PEEL_SAMPLES`] seeded unit vectors; a violation is reported with the
/// offending vector.
pub fn peel_simple(
    r: &AlgebraicCurvatureTensor,
    j: &DenseMatrix,
    lambda1: f64,
    seed: u64,
) -> Result<AlgebraicCurvatureTensor> {
    let n = r.dim();
    if j.rows() != n || j.cols() != n {
        return Err(Error::validation("operator dimension differs from the tensor"));
    }
    if j.skew_residual() > FAMILY_TOL || j.orthogonality_residual() > FAMILY_TOL {
        return Err(Error::validation("J must be skew-symmetric and orthogonal"));
    }
    let scale = r.max_abs().max(lambda1.abs()).max(1.0);
    let mut rng = rng_from_seed(seed);
    for _ in 0..PEEL_SAMPLES {
        let x = crate::numkit::unit_vector(n, &mut rng);
        let jx = j.matvec(&x);
        let lhs = r.jacobi(&x)?.matvec(&jx);
        let defect = vecops::norm(&vecops::sub(&lhs, &vecops::scale(&jx, lambda1)));
        if defect > PEEL_TOL * scale {
            return Err(Error::Precondition {
                reason: format!("R_X(JX) differs from lambda1 JX by {defect:e}"),
                witness: x,
            });
        }
    }
    let mut out = r.clone();
    out.add_clifford_term(j, &(-lambda1));
    Ok(out)
}

/// `<X,Z>Y - <Y,Z>X - sum_i 1/3 (2<J_iX,Y>J_iZ + <J_iZ,Y>J_iX - <J_iZ,X>J_iY)`
/// for a seven-operator family on `R^8`.
pub fn seven_expand_residual(f: &OperatorFamily, x: &[f64], y: &[f64], z: &[f64]) -> Result<Vec<f64>> {
    if f.dim() != 8 || f.len() != 7 {
        return Err(Error::validation("the expansion needs seven operators on R^8"));
    }
    let mut out = vecops::sub(&vecops::scale(y, vecops::dot(x, z)), &vecops::scale(x, vecops::dot(y, z)));
    for j in f.ops() {
        let (jx, jy, jz) = (j.matvec(x), j.matvec(y), j.matvec(z));
        vecops::axpy(&mut out, -2.0 / 3.0 * vecops::dot(&jx, y), &jz);
        vecops::axpy(&mut out, -vecops::dot(&jz, y) / 3.0, &jx);
        vecops::axpy(&mut out, vecops::dot(&jz, x) / 3.0, &jy);
    }
    Ok(out)
}

/// `J_1, J_2, J_3` acting diagonally on `R^8 = H ⊕ H` (coordinates `0..4`
/// and `4..8`) as right multiplication by the quaternion units `e_1, e_2,
/// -e_3`. Then `J_1 J_2 = J_3` holds exactly.
pub fn case_b_family() -> OperatorFamily {
    let units = [Octonion::<Rational>::basis(1), Octonion::basis(2), -Octonion::<Rational>::basis(3)];
    let ops = units
        .iter()
        .map(|u| {
            let r = j_op(u).expect("imaginary unit");
            DenseMatrix::from_fn(8, 8, |a, b| if a / 4 == b / 4 { r[(a % 4, b % 4)] } else { 0.0 })
        })
        .collect();
    OperatorFamily::new(8, ops).expect("8x8 operators")
}

pub fn case_b_structure(lambda0: f64, lambda: [f64; 3]) -> Result<CliffordStructure> {
    CliffordStructure::new(case_b_family(), lambda0, lambda.to_vec())
}

/// Random structure on `R^8`: a conjugated sub-family of `rho7(+1)` with
/// `lambda0` and the `mu_s` drawn from small integers and halves, `mu_s !=
/// lambda0`.
pub fn random_structure(nu: usize, rng: &mut SampleRng) -> Result<CliffordStructure> {
    let t = random_orthogonal(8, rng);
    let family = crate::cliffrep::rho7(1).sub_family(nu).conjugate(&t);
    let lambda0 = f64::from(rng.random_range(-6_i32..=6)) / 2.0;
    let mu = (0..nu)
        .map(|_| loop {
            let m = f64::from(rng.random_range(-12_i32..=12)) / 2.0;
            if m != lambda0 {
                break m;
            }
        })
        .collect();
    CliffordStructure::new(family, lambda0, mu)
}

/// Spectral comparison between assembled and predicted eigenspaces.
#[derive(Debug, Clone, Serialize)]
pub struct EigenspaceComparison {
    pub pattern_matches: bool,
    pub max_subspace_distance: f64,
}

/// Compares [`predict_eigenspaces`] with an eigensolve of the assembled `R_X`.
pub fn compare_eigenspaces(
    cs: &CliffordStructure,
    r: &AlgebraicCurvatureTensor,
    x: &[f64],
) -> Result<EigenspaceComparison> {
    let predicted = predict_eigenspaces(cs, x)?;
    let computed = crate::curvature::jacobi_spectrum(r, x, 1e-8)?;
    let pattern_matches = computed.matches(&predicted.pattern(), 1e-9);
    let mut dist: f64 = 0.0;
    if pattern_matches {
        for (p, c) in predicted.clusters.iter().zip(&computed.clusters) {
            dist = dist.max(vecops::subspace_distance(&p.basis, &c.basis, cs.dim()));
        }
    } else {
        dist = f64::INFINITY;
    }
    Ok(EigenspaceComparison { pattern_matches, max_subspace_distance: dist })
}

/// Clustered spectrum of an explicit list of eigenvalues without bases.
pub fn spectrum_of_values(values: &[f64]) -> ClusteredSpectrum {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    cluster_spectrum(&v, &[], EIGENVALUE_SEPARATION)
}
