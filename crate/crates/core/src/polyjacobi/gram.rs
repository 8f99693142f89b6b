use serde::Serialize;

use super::poly::Poly;
use crate::curvature::ExactCurvatureTensor;
use crate::error::{Error, Result};
use crate::numkit::{sample_unit_vectors, DenseMatrix};
use crate::scalar::Rational;

/// Vector of homogeneous polynomials of a common degree.
#[derive(Debug, Clone, PartialEq)]
pub struct HomPolyVec {
    nvars: usize,
    degree: u32,
    components: Vec<Poly>,
}

impl HomPolyVec {
    pub fn new(nvars: usize, degree: u32, components: Vec<Poly>) -> Result<Self> {
        if nvars > 8 {
            return Err(Error::validation(format!("{nvars} variables exceed the supported 8")));
        }
        if let Some(i) = components.iter().position(|p| !p.is_homogeneous(degree)) {
            return Err(Error::validation(format!("component {i} is not homogeneous of degree {degree}")));
        }
        if let Some(i) = components.iter().position(|p| p.nvars() > nvars) {
            return Err(Error::validation(format!("component {i} uses more than {nvars} variables")));
        }
        Ok(Self { nvars, degree, components })
    }

    /// `X -> M X` as linear forms in `x_1..x_n`.
    pub fn linear_image(m: &DenseMatrix<Rational>) -> Self {
        let n = m.cols();
        let components = m.to_rows().iter().map(|row| Poly::linear(row).with_nvars(n)).collect();
        Self { nvars: n, degree: 1, components }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dot(&self, other: &Self) -> Poly {
        self.components
            .iter()
            .zip(&other.components)
            .fold(Poly::zero_in(self.nvars), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval_f64(x)).collect()
    }
}

/// Columns `P_1(X), ..., P_nu(X)` of `A(X)` with weights `Lambda = diag(mu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGramSystem {
    columns: Vec<HomPolyVec>,
    lambda: Vec<Rational>,
}

impl PolyGramSystem {
    pub fn new(columns: Vec<HomPolyVec>, lambda: Vec<Rational>) -> Result<Self> {
        if columns.len() != lambda.len() {
            return Err(Error::validation("one weight per column required"));
        }
        if let Some(first) = columns.first() {
            if columns.iter().any(|c| c.nvars != first.nvars || c.degree != first.degree || c.len() != first.len()) {
                return Err(Error::validation("columns must share variables, degree and length"));
            }
        }
        Ok(Self { columns, lambda })
    }

    /// `P_s(X) = J_s X`.
    pub fn from_linear_family(ops: &[DenseMatrix<Rational>], mu: &[Rational]) -> Result<Self> {
        Self::new(ops.iter().map(HomPolyVec::linear_image).collect(), mu.to_vec())
    }

    pub fn columns(&self) -> &[HomPolyVec] {
        &self.columns
    }

    pub fn lambda(&self) -> &[Rational] {
        &self.lambda
    }

    /// `A(X)^t A(X)` as a polynomial matrix.
    pub fn gram(&self) -> DenseMatrix<Poly> {
        let nu = self.columns.len();
        DenseMatrix::from_fn(nu, nu, |s, q| self.columns[s].dot(&self.columns[q]))
    }

    /// `A(X) Lambda^k A(X)^t` as a polynomial matrix.
    pub fn weighted_outer(&self, k: u32) -> DenseMatrix<Poly> {
        let n = self.columns.first().map_or(0, HomPolyVec::len);
        let weights: Vec<Rational> =
            self.lambda.iter().map(|l| (0..k).fold(Rational::from_integer(1.into()), |acc, _| acc * l)).collect();
        DenseMatrix::from_fn(n, n, |a, b| {
            self.columns.iter().zip(&weights).fold(Poly::zero_in(0), |acc, (c, w)| {
                acc + (c.components[a].clone() * c.components[b].clone()).scale(w)
            })
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    /// `A(X)^t A(X) = |X|^2 I` as polynomials.
    pub orthonormal_columns: bool,
    /// `A(X) Lambda A(X)^t = R_X` as polynomials.
    pub reproduces_jacobi: bool,
    /// `max |R_X^k - A Lambda^k A^t|` over sampled unit `X`, per requested `k`.
    pub power_residuals: Vec<(u32, f64)>,
}

impl GramReport {
    pub fn pass(&self, tol: f64) -> bool {
        self.orthonormal_columns && self.reproduces_jacobi && self.power_residuals.iter().all(|(_, r)| *r < tol)
    }
}

/// Checks the Gram identities of a linear system against `R`, whose
/// Jacobi operator must be `sum_s mu_s P_s P_s^t` (constant part zero).
///
/// Both quadratic identities are compared symbolically; the powers `k`
/// are compared numerically at `samples` seeded unit vectors.
pub fn gram_residuals(
    sys: &PolyGramSystem,
    r: &ExactCurvatureTensor,
    powers: &[u32],
    samples: usize,
    seed: u64,
) -> Result<GramReport> {
    let Some(first) = sys.columns.first() else {
        return Ok(GramReport { orthonormal_columns: true, reproduces_jacobi: true, power_residuals: Vec::new() });
    };
    if first.degree != 1 {
        return Err(Error::Unsupported(format!(
            "Gram identities are checked for linear columns only, got degree {}",
            first.degree
        )));
    }
    let n = r.dim();
    if first.len() != n || first.nvars != n {
        return Err(Error::validation("columns must be vectors in the tensor's space"));
    }
    let norm = Poly::norm_sq(n);
    let gram = sys.gram();
    let nu = sys.columns.len();
    let orthonormal_columns = (0..nu).all(|s| {
        (0..nu).all(|q| {
            let target = if s == q { norm.clone() } else { Poly::zero_in(n) };
            gram[(s, q)] == target
        })
    });

    let vars: Vec<Poly> = (0..n).map(|i| Poly::var(n, i)).collect();
    let rp = r.map(|c| Poly::constant(n, c.clone()));
    let rx = rp.jacobi(&vars)?;
    let reproduces_jacobi = rx == sys.weighted_outer(1);

    if powers.contains(&0) {
        return Err(Error::validation("powers start at 1"));
    }
    let r64 = r.to_f64();
    let xs = if powers.is_empty() { Vec::new() } else { sample_unit_vectors(n, samples.max(1), seed)? };
    let mut power_residuals = Vec::new();
    for &k in powers {
        let outer = sys.weighted_outer(k);
        let mut worst: f64 = 0.0;
        for x in &xs {
            let rx = r64.jacobi(x)?;
            let rk = (1..k).fold(rx.clone(), |acc, _| &acc * &rx);
            worst = worst.max(rk.distance(&outer.map(|p| p.eval_f64(x))));
        }
        power_residuals.push((k, worst));
    }
    Ok(GramReport { orthonormal_columns, reproduces_jacobi, power_residuals })
}
