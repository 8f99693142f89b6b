//! Verification toolkit for Osserman curvature tensors in dimension eight.
//!
//! The crate builds the objects that appear in the classification of
//! pointwise Osserman manifolds of dimension eight and checks the identities
//! they satisfy:
//!
//! * [`numkit`]: dense matrices, a cyclic Jacobi eigensolver, spectrum
//!   clustering and seeded sampling.
//! * [`octonion`]: exact octonion and bioctonion arithmetic over a fixed
//!   canonical basis, the standard identity suite and isotropic spans.
//! * [`cliffrep`]: Clifford-module operator families in `R^8` and the
//!   reconstruction of an octonionic identification from a family.
//! * [`curvature`]: algebraic curvature tensors, Jacobi operators, Ricci
//!   traces and the Osserman test.
//! * [`cliffstruct`]: curvature tensors with a Clifford structure.
//! * [`polyjacobi`]: exact polynomials modulo `|X|^2`, the eigenprojection
//!   polynomial and the Gram identities of linear families.
//! * [`symcheck`]: the covariant-derivative model and second-Bianchi residuals.
//! * [`suite`]: the seeded, deterministic verification runner behind the CLI.

// index loops over several parallel arrays read better than zipped iterators
#![allow(clippy::needless_range_loop)]

pub mod cliffrep;
pub mod cliffstruct;
pub mod curvature;
pub mod error;
pub mod io;
pub mod numkit;
pub mod octonion;
pub mod polyjacobi;
pub mod scalar;
pub mod suite;
pub mod symcheck;

pub use error::{Error, Result};
