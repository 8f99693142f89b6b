//! Clifford-module operator families in `R^n`.
//!
//! The seven-operator family `rho7(+1)` is right multiplication by the
//! imaginary units of the canonical octonion table; other families are
//! obtained by restriction, sign changes or orthogonal conjugation.
//! [`psi_reconstruct`] recovers an orthogonal identification `R^8 -> O`
//! that intertwines a given family with right multiplication.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkit::{sym_eigen, vecops, DenseMatrix, DEFAULT_EIGEN_TOL};
use crate::octonion::{j_op, MultiplicationTable, Octonion};
use crate::scalar::Rational;

/// Default residual tolerance for family validation.
pub const FAMILY_TOL: f64 = 1e-10;

/// Operators `J_1..J_nu` acting on `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorFamily {
    dim: usize,
    ops: Vec<DenseMatrix>,
}

impl OperatorFamily {
    /// Checks shapes only; use [`validate_family`] for the algebraic
    /// relations.
    pub fn new(dim: usize, ops: Vec<DenseMatrix>) -> Result<Self> {
        if let Some(bad) = ops.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::validation(format!(
                "operator of shape {}x{} in a family on R^{dim}",
                bad.rows(),
                bad.cols()
            )));
        }
        Ok(Self { dim, ops })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn ops(&self) -> &[DenseMatrix] {
        &self.ops
    }

    pub fn op(&self, i: usize) -> &DenseMatrix {
        &self.ops[i]
    }

    /// The first `nu` operators.
    pub fn sub_family(&self, nu: usize) -> Self {
        Self { dim: self.dim, ops: self.ops[..nu.min(self.ops.len())].to_vec() }
    }

    /// Family made of the listed operators, in order.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self { dim: self.dim, ops: indices.iter().map(|&i| self.ops[i].clone()).collect() }
    }

    pub fn negate(&self, i: usize) -> Self {
        let mut f = self.clone();
        f.ops[i] = -&f.ops[i];
        f
    }

    /// `T J_i T^t` for every operator.
    pub fn conjugate(&self, t: &DenseMatrix) -> Self {
        let tt = t.transpose();
        Self { dim: self.dim, ops: self.ops.iter().map(|j| &(t * j) * &tt).collect() }
    }

    /// Product `J_1 J_2 ... J_nu`.
    pub fn product(&self) -> DenseMatrix {
        self.ops.iter().fold(DenseMatrix::identity(self.dim), |acc, j| &acc * j)
    }

    /// `<J_s X, J_q X>` Gram matrix at `x`.
    pub fn gram_at(&self, x: &[f64]) -> DenseMatrix {
        let images: Vec<Vec<f64>> = self.ops.iter().map(|j| j.matvec(x)).collect();
        DenseMatrix::from_fn(self.len(), self.len(), |s, q| vecops::dot(&images[s], &images[q]))
    }
}

/// Right multiplications by `e_1..e_7`, with `J_7` negated when needed so
/// that `J_1 ... J_7 = sign * I_8`.
pub fn rho7(sign: i8) -> OperatorFamily {
    let ops: Vec<DenseMatrix> =
        (1..8).map(|i| j_op(&Octonion::<Rational>::basis(i)).expect("imaginary unit")).collect();
    let family = OperatorFamily { dim: 8, ops };
    let p = family.product()[(0, 0)];
    if (p > 0.0) == (sign > 0) {
        family
    } else {
        family.negate(6)
    }
}

/// Right multiplications by `e_1, e_2, e_3` on the quaternion subalgebra
/// `span(1, e_1, e_2, e_3)`, with `J_3` negated when needed so that
/// `J_1 J_2 J_3 = sign * I_4`.
pub fn rho3(sign: i8) -> OperatorFamily {
    let ops: Vec<DenseMatrix> = (1..4)
        .map(|i| {
            let full = j_op(&Octonion::<Rational>::basis(i)).expect("imaginary unit");
            DenseMatrix::from_fn(4, 4, |r, c| full[(r, c)])
        })
        .collect();
    let family = OperatorFamily { dim: 4, ops };
    let p = family.product()[(0, 0)];
    if (p > 0.0) == (sign > 0) {
        family
    } else {
        family.negate(2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyVerdict {
    pub pass: bool,
    pub max_skew: f64,
    pub max_orthogonality: f64,
    pub max_anticommutation: f64,
    pub failures: Vec<String>,
}

impl FamilyVerdict {
    pub fn max_residual(&self) -> f64 {
        self.max_skew.max(self.max_orthogonality).max(self.max_anticommutation)
    }
}

/// Checks `J^t = -J`, `J^t J = I` and `J_s J_q + J_q J_s = 0` for `s != q`.
pub fn validate_family(f: &OperatorFamily, tol: f64) -> FamilyVerdict {
    let mut v = FamilyVerdict {
        pass: true,
        max_skew: 0.0,
        max_orthogonality: 0.0,
        max_anticommutation: 0.0,
        failures: Vec::new(),
    };
    for (s, j) in f.ops.iter().enumerate() {
        let skew = j.skew_residual();
        let orth = j.orthogonality_residual();
        v.max_skew = v.max_skew.max(skew);
        v.max_orthogonality = v.max_orthogonality.max(orth);
        if skew > tol {
            v.failures.push(format!("J{} is not skew-symmetric (residual {skew:e})", s + 1));
        }
        if orth > tol {
            v.failures.push(format!("J{} is not orthogonal (residual {orth:e})", s + 1));
        }
        for (q, k) in f.ops.iter().enumerate().skip(s + 1) {
            let anti = (&(j * k) + &(k * j)).frobenius_norm();
            v.max_anticommutation = v.max_anticommutation.max(anti);
            if anti > tol {
                v.failures.push(format!("J{} and J{} do not anticommute (residual {anti:e})", s + 1, q + 1));
            }
        }
    }
    v.pass = v.failures.is_empty();
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductSign {
    Plus,
    Minus,
    NotScalar,
}

/// Sign of `J_1 ... J_nu` when it is `±I` within `1e-10`.
pub fn product_sign(f: &OperatorFamily) -> Result<ProductSign> {
    let verdict = validate_family(f, FAMILY_TOL);
    if !verdict.pass {
        return Err(Error::validation(format!("invalid family: {}", verdict.failures.join("; "))));
    }
    let p = f.product();
    let id = DenseMatrix::identity(f.dim);
    Ok(if p.distance(&id) < 1e-10 {
        ProductSign::Plus
    } else if p.distance(&-&id) < 1e-10 {
        ProductSign::Minus
    } else {
        ProductSign::NotScalar
    })
}

/// Result of [`psi_reconstruct`].
#[derive(Debug, Clone, Serialize)]
pub struct PsiReconstruction {
    /// Orthogonal map `R^8 -> O` with `psi(J_i X) = psi(X) e_i`.
    pub psi: DenseMatrix,
    /// The common `+1` eigenvector mapped to `1`.
    pub base: Vec<f64>,
    /// `max_i ||psi J_i psi^t - R_{e_i}||_F`.
    pub intertwining_residual: f64,
}

/// `J_i J_j J_k` for every oriented triple `e_i e_j = e_k`.
pub fn triple_operators(f: &OperatorFamily) -> Vec<DenseMatrix> {
    MultiplicationTable::canonical()
        .lines()
        .iter()
        .map(|&[i, j, k]| &(f.op(i - 1) * f.op(j - 1)) * f.op(k - 1))
        .collect()
}

/// `max_i ||psi J_i psi^t - R_{e_i}||_F`
pub fn intertwining_residual(f: &OperatorFamily, psi: &DenseMatrix) -> f64 {
    let canonical = rho7(1);
    let pt = psi.transpose();
    f.ops.iter().zip(canonical.ops()).map(|(j, r)| (&(psi * j) * &pt).distance(r)).fold(0.0, f64::max)
}

/// Orthonormal basis of the `+1` eigenspace of a symmetric operator.
fn plus_one_projector(m: &DenseMatrix) -> Result<DenseMatrix> {
    let eig = sym_eigen(&m.symmetrized(), DEFAULT_EIGEN_TOL)?;
    let n = m.rows();
    let mut p = DenseMatrix::zeros(n, n);
    for (idx, &val) in eig.values.iter().enumerate() {
        if (val - 1.0).abs() < 1e-6 {
            let v = eig.vector(idx);
            p = &p + &DenseMatrix::from_fn(n, n, |r, c| v[r] * v[c]);
        }
    }
    Ok(p)
}

fn psi_from_base(f: &OperatorFamily, base: &[f64]) -> DenseMatrix {
    let mut rows = vec![base.to_vec()];
    rows.extend(f.ops.iter().map(|j| j.matvec(base)));
    // psi maps base -> 1 and J_i base -> e_i; those images are orthonormal
    DenseMatrix::from_rows(&rows).expect("8 rows of length 8")
}

/// Reconstructs `psi` from a seven-operator family with product `+I_8`.
///
/// The triple products `J_i J_j J_k` over oriented lines are commuting
/// symmetric involutions; a common `+1` eigenvector `X0` is found by
/// multiplying their `+1` eigenprojectors. Then `psi(X0) = 1` and
/// `psi(J_i X0) = e_i`.
pub fn psi_reconstruct(f: &OperatorFamily) -> Result<PsiReconstruction> {
    if f.dim != 8 || f.len() != 7 {
        return Err(Error::validation("psi reconstruction needs seven operators on R^8"));
    }
    match product_sign(f)? {
        ProductSign::Plus => {}
        other => return Err(Error::validation(format!("psi reconstruction needs J1...J7 = +I, got {other:?}"))),
    }
    let triples = triple_operators(f);
    let mut proj = DenseMatrix::identity(8);
    for m in &triples {
        proj = &proj * &plus_one_projector(m)?;
    }
    let eig = sym_eigen(&proj.symmetrized(), DEFAULT_EIGEN_TOL)?;
    let candidates: Vec<Vec<f64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > 0.5)
        .map(|(i, _)| eig.vector(i))
        .filter(|x| triples.iter().all(|m| vecops::norm(&vecops::sub(&m.matvec(x), x)) < 1e-8))
        .collect();

    let mut best: Option<PsiReconstruction> = None;
    for mut x in candidates {
        // fix the sign so the largest coordinate is positive
        let lead = x.iter().copied().fold(0.0_f64, |m, v| if v.abs() > m.abs() { v } else { m });
        if lead < 0.0 {
            x = vecops::scale(&x, -1.0);
        }
        let psi = psi_from_base(f, &x);
        let residual = intertwining_residual(f, &psi);
        if best.as_ref().is_none_or(|b| residual < b.intertwining_residual) {
            best = Some(PsiReconstruction { psi, base: x, intertwining_residual: residual });
        }
    }
    best.ok_or_else(|| Error::Reconstruction("no common +1 eigenvector of the triple products".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{random_orthogonal, rng_from_seed};

    #[test]
    fn rho7_signs() {
        let plus = rho7(1);
        assert_eq!(plus.product(), DenseMatrix::identity(8));
        assert_eq!(product_sign(&plus).unwrap(), ProductSign::Plus);
        let minus = rho7(-1);
        assert_eq!(minus.product(), -&DenseMatrix::<f64>::identity(8));
        assert_eq!(product_sign(&minus).unwrap(), ProductSign::Minus);
        assert_eq!(product_sign(&plus.negate(6)).unwrap(), ProductSign::Minus);
    }

    #[test]
    fn rho7_is_exactly_valid() {
        let v = validate_family(&rho7(1), FAMILY_TOL);
        assert!(v.pass);
        assert_eq!(v.max_residual(), 0.0);
    }

    #[test]
    fn rho3_quaternionic_case() {
        for s in [1, -1] {
            let f = rho3(s);
            assert!(validate_family(&f, FAMILY_TOL).pass);
            let expected = if s > 0 { ProductSign::Plus } else { ProductSign::Minus };
            assert_eq!(product_sign(&f).unwrap(), expected);
        }
    }

    #[test]
    fn three_operator_restriction_is_not_scalar() {
        let mut rng = rng_from_seed(9);
        let t = random_orthogonal(8, &mut rng);
        let f = rho7(1).sub_family(3).conjugate(&t);
        assert_eq!(product_sign(&f).unwrap(), ProductSign::NotScalar);
        // J1 J2 J3 splits R^8 into two 4-dimensional eigenspaces
        let eig = sym_eigen(&f.product().symmetrized(), 1e-12).unwrap();
        let plus = eig.values.iter().filter(|&&v| (v - 1.0).abs() < 1e-9).count();
        let minus = eig.values.iter().filter(|&&v| (v + 1.0).abs() < 1e-9).count();
        assert_eq!((plus, minus), (4, 4));
    }

    #[test]
    fn symmetric_operator_fails_skewness() {
        let mut ops = rho7(1).ops().to_vec();
        ops[2] = DenseMatrix::identity(8);
        let v = validate_family(&OperatorFamily::new(8, ops).unwrap(), FAMILY_TOL);
        assert!(!v.pass);
        assert!(v.failures.iter().any(|s| s.contains("skew")));
        assert!(product_sign(&OperatorFamily::new(8, vec![DenseMatrix::identity(8)]).unwrap()).is_err());
    }

    #[test]
    fn conjugation_preserves_validity() {
        let mut rng = rng_from_seed(3);
        let t = random_orthogonal(8, &mut rng);
        assert!(validate_family(&rho7(1).conjugate(&t), 1e-10).pass);
    }

    #[test]
    fn sub_families_are_valid() {
        for nu in 0..=6 {
            assert!(validate_family(&rho7(1).sub_family(nu), FAMILY_TOL).pass);
        }
    }

    #[test]
    fn triple_products_commute_and_are_symmetric_involutions() {
        let triples = triple_operators(&rho7(1));
        for a in &triples {
            assert!(a.symmetry_residual() < 1e-12);
            assert!(a.orthogonality_residual() < 1e-12);
            for b in &triples {
                assert!((&(a * b) - &(b * a)).frobenius_norm() < 1e-12);
            }
        }
    }

    #[test]
    fn psi_of_canonical_family_is_identity() {
        let r = psi_reconstruct(&rho7(1)).unwrap();
        assert!(r.intertwining_residual < 1e-12);
        assert!(r.psi.distance(&DenseMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn psi_round_trip_under_conjugation() {
        let mut rng = rng_from_seed(17);
        for _ in 0..5 {
            let t = random_orthogonal(8, &mut rng);
            let r = psi_reconstruct(&rho7(1).conjugate(&t)).unwrap();
            assert!(r.intertwining_residual < 1e-9);
            assert!(r.psi.orthogonality_residual() < 1e-9);
        }
    }

    #[test]
    fn psi_rejects_minus_family() {
        assert!(matches!(psi_reconstruct(&rho7(-1)), Err(Error::Validation(_))));
    }
}
