//! Scalar rings shared by the exact and floating code paths.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Commutative ring with unit. Implemented for every type with the usual
/// operator set: `f64`, `i64`, [`Rational`], complex numbers and
/// [`Poly`](crate::polyjacobi::Poly).
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + PartialEq + Debug + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact conversion of a finite double to a rational.
pub fn rat_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Small integer multiple of the unit, usable in any ring.
pub fn ring_int<T: Ring>(n: i64) -> T {
    let mut acc = T::zero();
    for _ in 0..n.unsigned_abs() {
        acc = acc + T::one();
    }
    if n < 0 {
        -acc
    } else {
        acc
    }
}
