//! Minimal dense linear algebra over doubles.

mod eigen;
mod matrix;
mod random;
mod spectrum;
pub mod vecops;

pub use eigen::{sym_eigen, SymEigen, DEFAULT_EIGEN_TOL, MAX_SWEEPS};
pub use matrix::DenseMatrix;
pub use random::{gaussian_vector, random_orthogonal, rng_from_seed, sample_unit_vectors, unit_vector, SampleRng};
pub use spectrum::{cluster_spectrum, Cluster, ClusteredSpectrum, DEFAULT_GAP_TOL};
