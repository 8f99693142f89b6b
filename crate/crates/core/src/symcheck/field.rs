use rand::Rng;
use rand_distr::StandardNormal;

use super::model::ConnectionModel;
use crate::cliffrep::{validate_family, OperatorFamily, FAMILY_TOL};
use crate::curvature::{AlgebraicCurvatureTensor, CurvatureTensor};
use crate::error::{Error, Result};
use crate::numkit::{gaussian_vector, vecops, DenseMatrix, SampleRng};

/// First derivatives at a point of a curvature tensor
/// `R(X,Y)Z = lambda0 (<X,Z>Y - <Y,Z>X) + sum_i (lambda_i - lambda0)/3
/// (2<J_iX,Y>J_iZ + <J_iZ,Y>J_iX - <J_iZ,X>J_iY)`:
/// gradients of the eigenvalue functions and `nabla_{e_a} J_i`.
///
/// Unit indices `i` run over `1..=nu`.
#[derive(Debug, Clone)]
pub struct DerivativeField {
    family: OperatorFamily,
    lambda0: f64,
    lambda: Vec<f64>,
    grad_lambda0: Vec<f64>,
    grad_lambda: Vec<Vec<f64>>,
    /// `nabla[a][i-1] = nabla_{e_a} J_i`.
    nabla: Vec<Vec<DenseMatrix>>,
}

/// How far `nabla J` is from preserving the Clifford relations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyResidual {
    /// `|(nabla J_i)^t + nabla J_i|`.
    pub skew: f64,
    /// `|nabla_U (J_i J_s + J_s J_i)|`, including `s = i`.
    pub anticommutation: f64,
}

impl DerivativeField {
    pub fn new(
        family: OperatorFamily,
        lambda0: f64,
        lambda: Vec<f64>,
        grad_lambda0: Vec<f64>,
        grad_lambda: Vec<Vec<f64>>,
        nabla: Vec<Vec<DenseMatrix>>,
    ) -> Result<Self> {
        let n = family.dim();
        let nu = family.len();
        let verdict = validate_family(&family, FAMILY_TOL);
        if !verdict.pass {
            return Err(Error::validation(format!("invalid family: {}", verdict.failures.join("; "))));
        }
        if lambda.len() != nu || grad_lambda.len() != nu {
            return Err(Error::validation("one eigenvalue and one gradient per operator"));
        }
        if grad_lambda0.len() != n || grad_lambda.iter().any(|g| g.len() != n) {
            return Err(Error::validation(format!("gradients must have length {n}")));
        }
        if nabla.len() != n || nabla.iter().any(|row| row.len() != nu) {
            return Err(Error::validation(format!("nabla J needs {n} directions times {nu} operators")));
        }
        for row in &nabla {
            for d in row {
                if d.rows() != n || d.cols() != n {
                    return Err(Error::validation("nabla J operator of the wrong shape"));
                }
                if d.skew_residual() > 1e-10 * d.max_abs().max(1.0) {
                    return Err(Error::validation("nabla J must be skew-symmetric"));
                }
            }
        }
        Ok(Self { family, lambda0, lambda, grad_lambda0, grad_lambda, nabla })
    }

    /// All derivatives zero (a locally symmetric point).
    pub fn parallel(family: OperatorFamily, lambda0: f64, lambda: Vec<f64>) -> Result<Self> {
        let n = family.dim();
        let nu = family.len();
        Self::new(
            family,
            lambda0,
            lambda,
            vec![0.0; n],
            vec![vec![0.0; n]; nu],
            vec![vec![DenseMatrix::zeros(n, n); nu]; n],
        )
    }

    /// Random field tangent to the family orbit, `nabla_{e_a} J_i = [Omega_a, J_i]`
    /// with Gaussian skew `Omega_a`, and Gaussian gradients of the given size.
    pub fn random_tangent(
        family: OperatorFamily,
        lambda0: f64,
        lambda: Vec<f64>,
        grad_size: f64,
        rng: &mut SampleRng,
    ) -> Result<Self> {
        let n = family.dim();
        let nu = family.len();
        let mut nabla = Vec::with_capacity(n);
        for _ in 0..n {
            let g = DenseMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
            let omega = &g - &g.transpose();
            nabla.push(family.ops().iter().map(|j| &(&omega * j) - &(j * &omega)).collect());
        }
        let grad_lambda0 = vecops::scale(&gaussian_vector(n, rng), grad_size);
        let grad_lambda = (0..nu).map(|_| vecops::scale(&gaussian_vector(n, rng), grad_size)).collect();
        Self::new(family, lambda0, lambda, grad_lambda0, grad_lambda, nabla)
    }

    pub fn with_grad_lambda0(mut self, g: Vec<f64>) -> Result<Self> {
        if g.len() != self.dim() {
            return Err(Error::validation("gradient of the wrong length"));
        }
        self.grad_lambda0 = g;
        Ok(self)
    }

    pub fn with_grad_lambda(mut self, i: usize, g: Vec<f64>) -> Result<Self> {
        self.check_unit(i)?;
        if g.len() != self.dim() {
            return Err(Error::validation("gradient of the wrong length"));
        }
        self.grad_lambda[i - 1] = g;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    pub fn nu(&self) -> usize {
        self.family.len()
    }

    pub fn family(&self) -> &OperatorFamily {
        &self.family
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    fn check_unit(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.nu() {
            return Err(Error::validation(format!("unit index {i} outside 1..={}", self.nu())));
        }
        Ok(())
    }

    /// `nabla_U J_i`.
    pub fn nabla_j(&self, u: &[f64], i: usize) -> Result<DenseMatrix> {
        self.check_unit(i)?;
        let n = self.dim();
        Ok(u.iter()
            .zip(&self.nabla)
            .filter(|(c, _)| **c != 0.0)
            .fold(DenseMatrix::zeros(n, n), |acc, (c, row)| &acc + &row[i - 1].scale(c)))
    }

    fn nabla_all(&self, u: &[f64]) -> Vec<DenseMatrix> {
        (1..=self.nu()).map(|i| self.nabla_j(u, i).expect("valid index")).collect()
    }

    /// `U(lambda0)`.
    pub fn d_lambda0(&self, u: &[f64]) -> f64 {
        vecops::dot(&self.grad_lambda0, u)
    }

    /// `U(lambda_i)`.
    pub fn d_lambda(&self, u: &[f64], i: usize) -> f64 {
        vecops::dot(&self.grad_lambda[i - 1], u)
    }

    /// `(nabla_W R)(V, Z) V`.
    pub fn nabla_r(&self, w: &[f64], v: &[f64], z: &[f64]) -> Vec<f64> {
        let mut out = vecops::sub(&vecops::scale(z, vecops::dot(v, v)), &vecops::scale(v, vecops::dot(z, v)));
        out = vecops::scale(&out, self.d_lambda0(w));
        let nj = self.nabla_all(w);
        for i in 0..self.nu() {
            let c = self.lambda[i] - self.lambda0;
            let dc = self.d_lambda(w, i + 1) - self.d_lambda0(w);
            let jv = self.family.op(i).matvec(v);
            let djv = nj[i].matvec(v);
            vecops::axpy(&mut out, dc * vecops::dot(&jv, z) + c * vecops::dot(&djv, z), &jv);
            vecops::axpy(&mut out, c * vecops::dot(&jv, z), &djv);
        }
        out
    }

    /// `nabla_W R` as a tensor, differentiating the structure formula by the
    /// product rule.
    pub fn derivative_tensor(&self, w: &[f64]) -> AlgebraicCurvatureTensor {
        let n = self.dim();
        let mut t = CurvatureTensor::constant(n, self.d_lambda0(w));
        let nj = self.nabla_all(w);
        for (i, j) in self.family.ops().iter().enumerate() {
            let dc = self.d_lambda(w, i + 1) - self.d_lambda0(w);
            let c = self.lambda[i] - self.lambda0;
            if dc != 0.0 {
                t.add_clifford_term(j, &dc);
            }
            if c != 0.0 {
                t.add_bilinear_term(&nj[i], j, &c);
                t.add_bilinear_term(j, &nj[i], &c);
            }
        }
        t
    }

    /// Left side of the second Bianchi identity
    /// `(nabla_U R)(X,Y,Y,X) + (nabla_X R)(Y,U,Y,X) + (nabla_Y R)(U,X,Y,X)`,
    /// expanded in the eigenvalue gradients and `nabla J`.
    pub fn bianchi_expanded(&self, u: &[f64], x: &[f64], y: &[f64]) -> f64 {
        let dot = vecops::dot;
        let (xx, yy, xy) = (dot(x, x), dot(y, y), dot(x, y));
        let (ux, uy) = (dot(u, x), dot(u, y));
        let mut s = self.d_lambda0(u) * (xy * xy - xx * yy)
            + self.d_lambda0(x) * (yy * ux - uy * xy)
            + self.d_lambda0(y) * (xx * uy - ux * xy);
        let (nu_, nx, ny) = (self.nabla_all(u), self.nabla_all(x), self.nabla_all(y));
        for i in 0..self.nu() {
            let j = self.family.op(i);
            let (jx, jy, ju) = (j.matvec(x), j.matvec(y), j.matvec(u));
            let jyx = dot(&jy, x);
            let d = |g: &[f64]| self.d_lambda(g, i + 1) - self.d_lambda0(g);
            s += d(x) * dot(&jy, u) * jyx + d(y) * dot(&ju, x) * jyx - d(u) * jyx * jyx;
            let c = self.lambda[i] - self.lambda0;
            let first = 2.0 * dot(&nu_[i].matvec(x), y) + dot(&nx[i].matvec(y), u) + dot(&ny[i].matvec(u), x);
            let second = dot(&jy, u) * dot(&nx[i].matvec(x), y) + dot(&jx, u) * dot(&ny[i].matvec(y), x);
            s += c * (first * jyx - second);
        }
        s
    }

    /// The same Bianchi sum evaluated on [`derivative_tensor`](Self::derivative_tensor).
    pub fn bianchi_via_tensor(&self, u: &[f64], x: &[f64], y: &[f64]) -> f64 {
        self.derivative_tensor(u).eval4(x, y, y, x)
            + self.derivative_tensor(x).eval4(y, u, y, x)
            + self.derivative_tensor(y).eval4(u, x, y, x)
    }

    /// Largest violation of the differentiated Clifford relations over the
    /// coordinate directions.
    pub fn tangency_residual(&self) -> TangencyResidual {
        let mut r = TangencyResidual { skew: 0.0, anticommutation: 0.0 };
        for row in &self.nabla {
            for (i, di) in row.iter().enumerate() {
                r.skew = r.skew.max(di.skew_residual());
                let ji = self.family.op(i);
                for (s, ds) in row.iter().enumerate() {
                    let js = self.family.op(s);
                    let d = &(&(di * js) + &(ji * ds)) + &(&(ds * ji) + &(js * di));
                    r.anticommutation = r.anticommutation.max(d.frobenius_norm());
                }
            }
        }
        r
    }
}

impl From<&ConnectionModel> for DerivativeField {
    fn from(model: &ConnectionModel) -> Self {
        let nabla = (0..8).map(|a| model.nabla_all(&vecops::unit(8, a))).collect();
        DerivativeField {
            family: model.family().clone(),
            lambda0: 0.0,
            lambda: model.lambda().to_vec(),
            grad_lambda0: vec![0.0; 8],
            grad_lambda: vec![vec![0.0; 8]; 7],
            nabla,
        }
    }
}

/// Bianchi sum for a connection model or a raw derivative field.
pub fn bianchi_residual(field: &DerivativeField, u: &[f64], x: &[f64], y: &[f64]) -> f64 {
    field.bianchi_expanded(u, x, y)
}

/// Bianchi sum for the quaternionic three-operator case; the family must
/// satisfy `J_1 J_2 = J_3`.
pub fn case_b_residual(field: &DerivativeField, u: &[f64], x: &[f64], y: &[f64]) -> Result<f64> {
    let f = field.family();
    if f.len() != 3 || (f.op(0) * f.op(1)).distance(f.op(2)) > FAMILY_TOL {
        return Err(Error::validation("case (b) needs three operators with J1 J2 = J3"));
    }
    Ok(field.bianchi_expanded(u, x, y))
}

/// `span(Y, J_1Y, J_2Y, J_3Y)` as an orthonormal basis.
pub fn quaternionic_span(f: &OperatorFamily, y: &[f64]) -> Vec<Vec<f64>> {
    let mut v = vec![y.to_vec()];
    v.extend(f.ops().iter().map(|j| j.matvec(y)));
    vecops::gram_schmidt(&v, 1e-12)
}
