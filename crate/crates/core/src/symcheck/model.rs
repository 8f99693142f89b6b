use crate::cliffrep::{product_sign, rho7, OperatorFamily, ProductSign};
use crate::error::{Error, Result};
use crate::numkit::{vecops, DenseMatrix};
use crate::octonion::Octonion;
use crate::scalar::{rat_to_f64, Rational};

/// Covariant derivatives of the octonionic family `J_i = R_{e_i}` encoded by
/// an octonion `m` and constant eigenvalues `lambda_1..lambda_7`:
///
/// * `A(U) = U* m - <U, m> 1`,
/// * `B_ij(Y) = -<(m e_j) e_i, Y>` for `i != j`,
/// * `nabla_U J_i = sum_{j != i} B_ij(U) J_j + J_i J_{A(U)} + A_i(U) I`,
///
/// and the curvature tensor `R(X,Y)Z = sum_i lambda_i/3 (2<J_iX,Y>J_iZ +
/// <J_iZ,Y>J_iX - <J_iZ,X>J_iY)` with `nabla lambda_i = 0`.
///
/// Unit indices `i, j` run over `1..=7`.
#[derive(Debug, Clone)]
pub struct ConnectionModel {
    m: Octonion<Rational>,
    lambda: [f64; 7],
    family: OperatorFamily,
    /// Column `a` is `A(e_a)`.
    a_matrix: DenseMatrix,
    /// `b_vectors[i-1][j-1]` is `-(m e_j) e_i`, so `B_ij(Y) = <b, Y>`.
    b_vectors: Vec<Vec<Vec<f64>>>,
}

impl ConnectionModel {
    pub fn new(m: Octonion<Rational>, lambda: [f64; 7]) -> Result<Self> {
        if lambda.iter().any(|l| !l.is_finite()) {
            return Err(Error::validation("non-finite eigenvalue"));
        }
        let family = rho7(1);
        if product_sign(&family)? != ProductSign::Plus {
            return Err(Error::validation("the octonionic family must have product +I"));
        }
        let cols: Vec<Vec<f64>> =
            (0..8).map(|a| a_map_exact(&m, &Octonion::basis(a)).to_f64().into_coeffs().to_vec()).collect();
        let a_matrix = DenseMatrix::from_columns(&cols)?;
        let b_vectors = (1..8)
            .map(|i| {
                (1..8)
                    .map(|j| {
                        let v = -(&(&m * &Octonion::basis(j)) * &Octonion::basis(i));
                        v.to_f64().into_coeffs().to_vec()
                    })
                    .collect()
            })
            .collect();
        Ok(Self { m, lambda, family, a_matrix, b_vectors })
    }

    pub fn m(&self) -> &Octonion<Rational> {
        &self.m
    }

    pub fn lambda(&self) -> &[f64; 7] {
        &self.lambda
    }

    pub fn family(&self) -> &OperatorFamily {
        &self.family
    }

    /// `|m|`, as a double.
    pub fn m_norm(&self) -> f64 {
        rat_to_f64(&self.m.norm_sq()).sqrt()
    }

    /// `A(U) = U* m - <U, m> 1`, exactly.
    pub fn a_map(&self, u: &Octonion<Rational>) -> Octonion<Rational> {
        a_map_exact(&self.m, u)
    }

    /// `A(U)` for a real vector `U`.
    pub fn a_map_f64(&self, u: &[f64]) -> Vec<f64> {
        self.a_matrix.matvec(u)
    }

    /// `B_ij(Y) = -<(m e_j) e_i, Y>`, exactly.
    pub fn b_form_exact(&self, i: usize, j: usize, y: &Octonion<Rational>) -> Result<Rational> {
        check_pair(i, j)?;
        Ok(-(&(&self.m * &Octonion::basis(j)) * &Octonion::basis(i)).dot(y))
    }

    pub fn b_form(&self, i: usize, j: usize, y: &[f64]) -> Result<f64> {
        check_pair(i, j)?;
        Ok(vecops::dot(&self.b_vectors[i - 1][j - 1], y))
    }

    /// `nabla_U J_i`.
    pub fn nabla_j(&self, u: &[f64], i: usize) -> Result<DenseMatrix> {
        check_unit(i)?;
        let a = self.a_map_f64(u);
        let mut j_a = DenseMatrix::zeros(8, 8);
        for k in 1..8 {
            if a[k] != 0.0 {
                j_a = &j_a + &self.family.op(k - 1).scale(&a[k]);
            }
        }
        let ji = self.family.op(i - 1);
        let mut out = &(ji * &j_a) + &DenseMatrix::identity(8).scale(&a[i]);
        for j in (1..8).filter(|&j| j != i) {
            let b = vecops::dot(&self.b_vectors[i - 1][j - 1], u);
            if b != 0.0 {
                out = &out + &self.family.op(j - 1).scale(&b);
            }
        }
        Ok(out)
    }

    /// All seven `nabla_U J_i`.
    pub fn nabla_all(&self, u: &[f64]) -> Vec<DenseMatrix> {
        (1..8).map(|i| self.nabla_j(u, i).expect("valid index")).collect()
    }

    /// `(nabla_W R)(V, Z) V = sum_i lambda_i (<(nabla_W J_i)V, Z> J_iV + <J_iV, Z> (nabla_W J_i)V)`.
    pub fn nabla_r(&self, w: &[f64], v: &[f64], z: &[f64]) -> Vec<f64> {
        let nj = self.nabla_all(w);
        let mut out = vec![0.0; 8];
        for (i, l) in self.lambda.iter().enumerate() {
            let jv = self.family.op(i).matvec(v);
            let djv = nj[i].matvec(v);
            vecops::axpy(&mut out, l * vecops::dot(&djv, z), &jv);
            vecops::axpy(&mut out, l * vecops::dot(&jv, z), &djv);
        }
        out
    }

    /// `(nabla_X R)(X, Y) X`.
    pub fn symmetric_residual(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.nabla_r(x, x, y)
    }

    /// `max(1, |m| max|lambda| |X|^3 |Y|)`, the natural size of
    /// [`symmetric_residual`](Self::symmetric_residual).
    pub fn residual_scale(&self, x: &[f64], y: &[f64]) -> f64 {
        let lmax = self.lambda.iter().fold(0.0_f64, |a, l| a.max(l.abs()));
        (self.m_norm() * lmax * vecops::norm(x).powi(3) * vecops::norm(y)).max(1.0)
    }

    /// `(nabla_X J_i) X = sum_j B_ij(X) J_jX + |X|^2 J_i m - <X,m> J_iX + <m,J_iX> X`.
    pub fn nabla_j_x_expanded(&self, x: &[f64], i: usize) -> Result<Vec<f64>> {
        check_unit(i)?;
        let m = self.m.to_f64().into_coeffs();
        let ji = self.family.op(i - 1);
        let jix = ji.matvec(x);
        let mut out = vecops::scale(&ji.matvec(&m), vecops::dot(x, x));
        vecops::axpy(&mut out, -vecops::dot(x, &m), &jix);
        vecops::axpy(&mut out, vecops::dot(&m, &jix), x);
        for j in (1..8).filter(|&j| j != i) {
            vecops::axpy(&mut out, self.b_form(i, j, x)?, &self.family.op(j - 1).matvec(x));
        }
        Ok(out)
    }
}

fn a_map_exact(m: &Octonion<Rational>, u: &Octonion<Rational>) -> Octonion<Rational> {
    let prod = &u.conj() * m;
    let s = u.dot(m);
    &prod - &Octonion::one().scale(&s)
}

fn check_unit(i: usize) -> Result<()> {
    if !(1..=7).contains(&i) {
        return Err(Error::validation(format!("unit index {i} outside 1..=7")));
    }
    Ok(())
}

fn check_pair(i: usize, j: usize) -> Result<()> {
    check_unit(i)?;
    check_unit(j)?;
    if i == j {
        return Err(Error::validation(format!("B_ij needs i != j, got i = j = {i}")));
    }
    Ok(())
}
