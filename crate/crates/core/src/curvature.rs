//! Algebraic curvature tensors on `R^n`.
//!
//! Components follow `R_ijkl = <R(e_i, e_j) e_k, e_l>` with the sign of
//! `R(X, Y) Z = lambda0 (<X, Z> Y - <Y, Z> X)` for constant curvature
//! `lambda0`, so the Jacobi operator is `R_X Y = R(X, Y) X` and a space form
//! of curvature `lambda0` has `R_X = lambda0 (|X|^2 I - X X^t)`.

use std::ops::Div;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numkit::{
    cluster_spectrum, sample_unit_vectors, sym_eigen, vecops, ClusteredSpectrum, DenseMatrix, DEFAULT_EIGEN_TOL,
    DEFAULT_GAP_TOL,
};
use crate::scalar::{rat_to_f64, Rational, Ring};

/// Tolerance for symmetry and first-Bianchi checks.
pub const TENSOR_TOL: f64 = 1e-12;
/// Tolerance of the Einstein test.
pub const EINSTEIN_TOL: f64 = 1e-10;

/// Dense `(0,4)` tensor with the curvature symmetries.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor<T = f64> {
    dim: usize,
    comp: Vec<T>,
}

pub type AlgebraicCurvatureTensor = CurvatureTensor<f64>;
pub type ExactCurvatureTensor = CurvatureTensor<Rational>;

/// Largest violations of the index symmetries and of the first Bianchi identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TensorResidual {
    pub antisymmetry: f64,
    pub pair_symmetry: f64,
    pub bianchi: f64,
}

impl TensorResidual {
    pub fn max(&self) -> f64 {
        self.antisymmetry.max(self.pair_symmetry).max(self.bianchi)
    }
}

impl<T: Ring> CurvatureTensor<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, comp: vec![T::zero(); dim.pow(4)] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[T] {
        &self.comp
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.dim + j) * self.dim + k) * self.dim + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &T {
        &self.comp[self.idx(i, j, k, l)]
    }

    fn add_at(&mut self, i: usize, j: usize, k: usize, l: usize, v: T) {
        let p = self.idx(i, j, k, l);
        let cur = std::mem::replace(&mut self.comp[p], T::zero());
        self.comp[p] = cur + v;
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> CurvatureTensor<U> {
        CurvatureTensor { dim: self.dim, comp: self.comp.iter().map(f).collect() }
    }

    /// Constant curvature `lambda0` on all of `R^dim`.
    pub fn constant(dim: usize, lambda0: T) -> Self {
        Self::block_constant(dim, dim, lambda0)
    }

    /// Constant curvature `lambda` on `span(e_0, ..., e_{block-1})`, flat on
    /// the complement.
    pub fn block_constant(dim: usize, block: usize, lambda: T) -> Self {
        let mut r = Self::zeros(dim);
        for i in 0..block {
            for j in 0..block {
                if i != j {
                    r.add_at(i, j, i, j, lambda.clone());
                    r.add_at(i, j, j, i, -lambda.clone());
                }
            }
        }
        r
    }

    /// Adds `coeff/3 (2 <JX,Y> JZ + <JZ,Y> JX - <JZ,X> JY)`.
    pub fn add_clifford_term(&mut self, j: &DenseMatrix<T>, coeff: &T)
    where
        T: Div<Output = T>,
    {
        self.add_bilinear_term(j, j, coeff);
    }

    /// Adds `coeff/3 (2 <JX,Y> KZ + <JZ,Y> KX - <JZ,X> KY)`; with
    /// `K = J` this is the Clifford term, and the derivative of the Clifford
    /// term along `J' ` is the sum of the terms `(J', J)` and `(J, J')`.
    pub fn add_bilinear_term(&mut self, j: &DenseMatrix<T>, k: &DenseMatrix<T>, coeff: &T)
    where
        T: Div<Output = T>,
    {
        let n = self.dim;
        assert_eq!((j.rows(), j.cols()), (n, n), "operator dimension");
        assert_eq!((k.rows(), k.cols()), (n, n), "operator dimension");
        let third = coeff.clone() / (T::one() + T::one() + T::one());
        let two = T::one() + T::one();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let term = two.clone() * j[(b, a)].clone() * k[(d, c)].clone()
                            + j[(b, c)].clone() * k[(d, a)].clone()
                            - j[(a, c)].clone() * k[(d, b)].clone();
                        if !term.is_zero() {
                            self.add_at(a, b, c, d, third.clone() * term);
                        }
                    }
                }
            }
        }
    }

    /// `<R(x, y) z, w>`.
    pub fn eval4(&self, x: &[T], y: &[T], z: &[T], w: &[T]) -> T {
        self.apply(x, y, z).into_iter().zip(w).fold(T::zero(), |acc, (a, b)| acc + a * b.clone())
    }

    /// Component-wise sum; dimensions must agree.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            comp: self.comp.iter().zip(&other.comp).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| s.clone() * a.clone())
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::validation(format!("tensor dimensions differ: {} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    /// Symmetry and Bianchi defects, measured by `size`.
    pub fn residual_with(&self, size: impl Fn(&T) -> f64) -> TensorResidual {
        let n = self.dim;
        let mut r = TensorResidual { antisymmetry: 0.0, pair_symmetry: 0.0, bianchi: 0.0 };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = self.get(i, j, k, l);
                        let anti = size(&(v.clone() + self.get(j, i, k, l).clone()))
                            .max(size(&(v.clone() + self.get(i, j, l, k).clone())));
                        r.antisymmetry = r.antisymmetry.max(anti);
                        r.pair_symmetry = r.pair_symmetry.max(size(&(v.clone() - self.get(k, l, i, j).clone())));
                        let b = v.clone() + self.get(j, k, i, l).clone() + self.get(k, i, j, l).clone();
                        r.bianchi = r.bianchi.max(size(&b));
                    }
                }
            }
        }
        r
    }

    /// `(R_X)_ab = <R(X, e_b) X, e_a>`.
    pub fn jacobi(&self, x: &[T]) -> Result<DenseMatrix<T>> {
        let n = self.dim;
        if x.len() != n {
            return Err(Error::validation(format!("vector of length {} for a tensor on R^{n}", x.len())));
        }
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for k in 0..n {
                if x[k].is_zero() {
                    continue;
                }
                let w = x[i].clone() * x[k].clone();
                for b in 0..n {
                    for a in 0..n {
                        let r = self.get(i, b, k, a);
                        if !r.is_zero() {
                            let p = a * n + b;
                            data[p] = data[p].clone() + w.clone() * r.clone();
                        }
                    }
                }
            }
        }
        DenseMatrix::new(n, n, data)
    }

    /// `Ric_bc = sum_i R_{i b i c}`, so that `Ric(X, X) = tr R_X`.
    pub fn ricci(&self) -> DenseMatrix<T> {
        let n = self.dim;
        DenseMatrix::from_fn(n, n, |b, c| (0..n).fold(T::zero(), |acc, i| acc + self.get(i, b, i, c).clone()))
    }

    /// Vector `R(x, y) z`.
    pub fn apply(&self, x: &[T], y: &[T], z: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let xy = x[i].clone() * y[j].clone();
                if xy.is_zero() {
                    continue;
                }
                for k in 0..n {
                    let w = xy.clone() * z[k].clone();
                    if w.is_zero() {
                        continue;
                    }
                    for (l, o) in out.iter_mut().enumerate() {
                        let r = self.get(i, j, k, l);
                        if !r.is_zero() {
                            *o = o.clone() + w.clone() * r.clone();
                        }
                    }
                }
            }
        }
        out
    }
}

impl CurvatureTensor<f64> {
    /// Symmetry-completes generators `(i, j, k, l, value)` and validates.
    ///
    /// Every generator fixes the eight components related to it by the index
    /// symmetries; a later generator that disagrees with an earlier one by
    /// more than `1e-12` is rejected.
    pub fn from_generators(dim: usize, generators: &[(usize, usize, usize, usize, f64)]) -> Result<Self> {
        if dim < 2 {
            return Err(Error::validation("curvature tensors need dimension >= 2"));
        }
        let mut comp = vec![0.0; dim.pow(4)];
        let mut set = vec![false; dim.pow(4)];
        let idx = |i: usize, j: usize, k: usize, l: usize| ((i * dim + j) * dim + k) * dim + l;
        for &(i, j, k, l, v) in generators {
            if [i, j, k, l].iter().any(|&a| a >= dim) {
                return Err(Error::validation(format!("index out of range in ({i},{j},{k},{l})")));
            }
            if !v.is_finite() {
                return Err(Error::validation(format!("non-finite component at ({i},{j},{k},{l})")));
            }
            let images = [
                ((i, j, k, l), v),
                ((j, i, k, l), -v),
                ((i, j, l, k), -v),
                ((j, i, l, k), v),
                ((k, l, i, j), v),
                ((l, k, i, j), -v),
                ((k, l, j, i), -v),
                ((l, k, j, i), v),
            ];
            for ((a, b, c, d), w) in images {
                let p = idx(a, b, c, d);
                if set[p] && (comp[p] - w).abs() > TENSOR_TOL {
                    return Err(Error::validation(format!(
                        "conflicting value for R[{a},{b},{c},{d}]: {} vs {w}",
                        comp[p]
                    )));
                }
                comp[p] = w;
                set[p] = true;
            }
        }
        let r = Self { dim, comp };
        r.check()?;
        Ok(r)
    }

    /// Builds from a full component array and validates.
    pub fn from_components(dim: usize, comp: Vec<f64>) -> Result<Self> {
        if comp.len() != dim.pow(4) {
            return Err(Error::validation(format!(
                "expected {} components for dimension {dim}, got {}",
                dim.pow(4),
                comp.len()
            )));
        }
        let r = Self { dim, comp };
        r.check()?;
        Ok(r)
    }

    pub fn residual(&self) -> TensorResidual {
        self.residual_with(|v| v.abs())
    }

    /// Fails when a symmetry or the first Bianchi identity is violated by
    /// more than `1e-12` relative to the largest component (at least 1).
    pub fn check(&self) -> Result<()> {
        let scale = self.comp.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        let res = self.residual();
        if res.max() > TENSOR_TOL * scale {
            return Err(Error::validation(format!(
                "not an algebraic curvature tensor (antisymmetry {:e}, pair symmetry {:e}, Bianchi {:e})",
                res.antisymmetry, res.pair_symmetry, res.bianchi
            )));
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.comp.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.comp.iter().zip(&other.comp).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Non-zero components as `(i, j, k, l, value)`.
    pub fn nonzero_components(&self) -> Vec<(usize, usize, usize, usize, f64)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let v = *self.get(i, j, k, l);
                        if v != 0.0 {
                            out.push((i, j, k, l, v));
                        }
                    }
                }
            }
        }
        out
    }
}

impl CurvatureTensor<Rational> {
    pub fn to_f64(&self) -> AlgebraicCurvatureTensor {
        CurvatureTensor { dim: self.dim, comp: self.comp.iter().map(rat_to_f64).collect() }
    }

    /// Exact validity: every defect vanishes.
    pub fn is_exactly_valid(&self) -> bool {
        self.residual_with(|v| if v == &Rational::from_integer(0.into()) { 0.0 } else { 1.0 }).max() == 0.0
    }
}

/// Space form `lambda0 (<X,Z> Y - <Y,Z> X)` on `R^n`.
pub fn const_curv(n: usize, lambda0: f64) -> Result<AlgebraicCurvatureTensor> {
    if n < 2 {
        return Err(Error::validation("const_curv needs n >= 2"));
    }
    Ok(CurvatureTensor::constant(n, lambda0))
}

/// Jacobi operator at `x`.
pub fn jacobi(r: &AlgebraicCurvatureTensor, x: &[f64]) -> Result<DenseMatrix> {
    r.jacobi(x)
}

/// Clustered spectrum of `R_X` restricted to `X^perp`; `tol` is the
/// clustering gap.
pub fn jacobi_spectrum(r: &AlgebraicCurvatureTensor, x: &[f64], tol: f64) -> Result<ClusteredSpectrum> {
    let nx = vecops::norm(x);
    if (nx - 1.0).abs() > 1e-12 {
        return Err(Error::validation(format!("jacobi_spectrum needs a unit vector, |X| = {nx}")));
    }
    let rx = r.jacobi(x)?;
    let n = r.dim();
    let basis = vecops::orthogonal_complement(&[x.to_vec()], n, 1e-10);
    if basis.len() != n - 1 {
        return Err(Error::Degenerate("could not complete X to an orthonormal basis".into()));
    }
    let b = DenseMatrix::from_columns(&basis)?;
    let restricted = &(&b.transpose() * &rx) * &b;
    let eig = sym_eigen(&restricted.symmetrized(), DEFAULT_EIGEN_TOL)?;
    let vectors: Vec<Vec<f64>> = (0..n - 1).map(|i| b.matvec(&eig.vector(i))).collect();
    Ok(cluster_spectrum(&eig.values, &vectors, tol))
}

/// Outcome of [`osserman_test`].
#[derive(Debug, Clone, Serialize)]
pub struct OssermanVerdict {
    pub is_osserman: bool,
    pub reference_spectrum: ClusteredSpectrum,
    pub max_deviation: f64,
    pub vectors_tested: usize,
    /// Unit vector whose spectrum disagrees most with the reference.
    pub witness: Option<Vec<f64>>,
    /// Spectrum at the witness.
    pub witness_spectrum: Option<ClusteredSpectrum>,
}

struct Probe {
    values: Vec<f64>,
    spectrum: ClusteredSpectrum,
}

fn probe(r: &AlgebraicCurvatureTensor, x: &[f64]) -> Result<Probe> {
    let spectrum = jacobi_spectrum(r, x, DEFAULT_GAP_TOL)?.without_bases();
    let values = spectrum.clusters.iter().flat_map(|c| std::iter::repeat_n(c.value, c.multiplicity)).collect();
    Ok(Probe { values, spectrum })
}

fn sorted_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Compares Jacobi spectra at `samples` seeded unit vectors and at the
/// coordinate directions against the spectrum at the first vector.
///
/// Eigenvalues are compared after sorting; a different multiplicity
/// pattern fails regardless of how close the values are.
pub fn osserman_test(r: &AlgebraicCurvatureTensor, samples: usize, seed: u64, tol: f64) -> Result<OssermanVerdict> {
    let n = r.dim();
    let mut probes_at = if samples > 0 { sample_unit_vectors(n, samples, seed)? } else { Vec::new() };
    probes_at.extend((0..n).map(|i| vecops::unit(n, i)));

    let results: Vec<Result<Probe>> = map_maybe_parallel(&probes_at, |x| probe(r, x));
    let results: Vec<Probe> = results.into_iter().collect::<Result<_>>()?;

    let reference = &results[0];
    let ref_pattern = reference.spectrum.multiplicities();
    let mut max_deviation: f64 = 0.0;
    let mut worst: Option<(usize, f64, bool)> = None;
    for (idx, p) in results.iter().enumerate().skip(1) {
        let dev = sorted_distance(&p.values, &reference.values);
        let pattern_ok = p.spectrum.multiplicities() == ref_pattern;
        max_deviation = max_deviation.max(dev);
        let bad = !pattern_ok || dev >= tol;
        if bad {
            let replace = match worst {
                None => true,
                Some((_, d, pat)) => (!pattern_ok && pat) || (pattern_ok == pat && dev > d),
            };
            if replace {
                worst = Some((idx, dev, pattern_ok));
            }
        }
    }
    let (witness, witness_spectrum) = match worst {
        Some((idx, _, _)) => (Some(probes_at[idx].clone()), Some(results[idx].spectrum.clone())),
        None => (None, None),
    };
    Ok(OssermanVerdict {
        is_osserman: witness.is_none(),
        reference_spectrum: reference.spectrum.clone(),
        max_deviation,
        vectors_tested: probes_at.len(),
        witness,
        witness_spectrum,
    })
}

/// Result of [`einstein_check`].
#[derive(Debug, Clone, Serialize)]
pub struct EinsteinVerdict {
    pub is_einstein: bool,
    pub ricci: DenseMatrix,
    /// `||Ric - (tr Ric / n) I||_F`.
    pub deviation: f64,
    /// Coordinate direction with the largest diagonal deviation, when failing.
    pub witness: Option<Vec<f64>>,
}

/// Whether the Ricci tensor is a multiple of the identity within `1e-10`.
pub fn einstein_check(r: &AlgebraicCurvatureTensor) -> EinsteinVerdict {
    let ric = r.ricci();
    let n = r.dim();
    let mean = ric.trace() / n as f64;
    let diff = &ric - &DenseMatrix::identity(n).scale(&mean);
    let deviation = diff.frobenius_norm();
    let is_einstein = deviation < EINSTEIN_TOL;
    let witness = (!is_einstein).then(|| {
        // an eigenvector of Ric - mean I with the largest |eigenvalue|
        match sym_eigen(&diff.symmetrized(), DEFAULT_EIGEN_TOL) {
            Ok(e) => {
                let i = (0..n).max_by(|&a, &b| e.values[a].abs().total_cmp(&e.values[b].abs())).unwrap_or(0);
                e.vector(i)
            }
            Err(_) => vecops::unit(n, 0),
        }
    });
    EinsteinVerdict { is_einstein, ricci: ric, deviation, witness }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_maybe_parallel<I: Sync, O: Send>(items: &[I], f: impl Fn(&I) -> O + Sync + Send) -> Vec<O> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_maybe_parallel<I: Sync, O: Send>(items: &[I], f: impl Fn(&I) -> O + Sync + Send) -> Vec<O> {
    items.iter().map(f).collect()
}
