//! Seeded sampling.
//!
//! All randomness comes from [`XorShiftRng`] (Marsaglia's 128-bit xorshift)
//! seeded through `SeedableRng::seed_from_u64`. Unit vectors are normalized
//! standard Gaussian samples, which makes them uniform on the sphere.

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use rand_xorshift::XorShiftRng;

use super::matrix::DenseMatrix;
use super::vecops;
use crate::error::{Error, Result};

pub type SampleRng = XorShiftRng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    XorShiftRng::seed_from_u64(seed)
}

pub fn gaussian_vector(n: usize, rng: &mut SampleRng) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn unit_vector(n: usize, rng: &mut SampleRng) -> Vec<f64> {
    loop {
        if let Some(v) = vecops::normalized(&gaussian_vector(n, rng)) {
            return v;
        }
    }
}

pub fn sample_unit_vectors(n: usize, count: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(Error::validation("cannot sample unit vectors in dimension 0"));
    }
    let mut rng = rng_from_seed(seed);
    Ok((0..count).map(|_| unit_vector(n, &mut rng)).collect())
}

/// Haar-ish random orthogonal matrix: Gram-Schmidt of a Gaussian matrix.
pub fn random_orthogonal(n: usize, rng: &mut SampleRng) -> DenseMatrix {
    loop {
        let cols: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vector(n, rng)).collect();
        let q = vecops::gram_schmidt(&cols, 1e-8);
        if q.len() == n {
            return DenseMatrix::from_columns(&q).expect("square");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = sample_unit_vectors(8, 1, 7).unwrap();
        let b = sample_unit_vectors(8, 1, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_unit_vectors(8, 1, 8).unwrap());
    }

    #[test]
    fn unit_norm() {
        for v in sample_unit_vectors(8, 50, 3).unwrap() {
            assert!((vecops::dot(&v, &v) - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(sample_unit_vectors(0, 1, 1).is_err());
    }

    #[test]
    fn statistical_sanity() {
        let vs = sample_unit_vectors(3, 1000, 1).unwrap();
        let mean_norm = vs.iter().map(|v| vecops::norm(v)).sum::<f64>() / 1000.0;
        assert!((mean_norm - 1.0).abs() < 1e-14);
        for k in 0..3 {
            let m = vs.iter().map(|v| v[k]).sum::<f64>() / 1000.0;
            assert!(m.abs() < 0.1, "coordinate {k} mean {m}");
        }
    }

    #[test]
    fn orthogonal_matrix() {
        let mut rng = rng_from_seed(5);
        let q = random_orthogonal(8, &mut rng);
        assert!(q.orthogonality_residual() < 1e-12);
    }
}
