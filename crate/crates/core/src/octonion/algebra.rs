use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use super::table::MultiplicationTable;
use crate::error::{Error, Result};
use crate::numkit::DenseMatrix;
use crate::scalar::{rat_to_f64, Rational, Ring};

/// Octonion `c0 1 + c1 e1 + ... + c7 e7` over a scalar ring.
///
/// Over `Rational` this is the real octonion algebra with exact arithmetic,
/// over complex scalars it is the bioctonion algebra. The scalar product
/// [`dot`](Octonion::dot) is the bilinear form `sum a_i b_i` in both cases.
#[derive(Debug, Clone, PartialEq)]
pub struct Octonion<T> {
    coeffs: [T; 8],
}

pub type Bioctonion = Octonion<Complex64>;

impl<T> Octonion<T> {
    pub const fn new(coeffs: [T; 8]) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T; 8] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> [T; 8] {
        self.coeffs
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Octonion<U> {
        Octonion { coeffs: self.coeffs.each_ref().map(f) }
    }
}

impl<T: Ring> Octonion<T> {
    pub fn zero() -> Self {
        Self { coeffs: std::array::from_fn(|_| T::zero()) }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `e_i`, with `e_0 = 1`.
    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.coeffs[i] = T::one();
        o
    }

    pub fn from_slice(v: &[T]) -> Result<Self> {
        let coeffs: [T; 8] = v
            .to_vec()
            .try_into()
            .map_err(|_| Error::validation(format!("octonion needs 8 coefficients, got {}", v.len())))?;
        Ok(Self { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// Real part `<a, 1>`.
    pub fn re(&self) -> T {
        self.coeffs[0].clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    /// `a* = 2<a,1>1 - a`
    pub fn conj(&self) -> Self {
        let mut c = self.map(|x| -x.clone());
        c.coeffs[0] = self.coeffs[0].clone();
        c
    }

    /// Bilinear scalar product `sum a_i b_i`.
    pub fn dot(&self, other: &Self) -> T {
        self.coeffs.iter().zip(&other.coeffs).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn norm_sq(&self) -> T {
        self.dot(self)
    }

    pub fn mul_with(&self, other: &Self, table: &MultiplicationTable) -> Self {
        let mut out = Self::zero();
        for a in 0..8 {
            if self.coeffs[a].is_zero() {
                continue;
            }
            for b in 0..8 {
                if other.coeffs[b].is_zero() {
                    continue;
                }
                let p = table.product(a, b);
                let term = self.coeffs[a].clone() * other.coeffs[b].clone();
                let slot = &mut out.coeffs[p.index];
                *slot = if p.sign > 0 { slot.clone() + term } else { slot.clone() - term };
            }
        }
        out
    }

    /// Matrix of `X -> X u` in the canonical basis.
    pub fn right_mul_matrix(&self) -> DenseMatrix<T> {
        right_mul_matrix_with(self, MultiplicationTable::canonical())
    }

    /// Matrix of `X -> u X` in the canonical basis.
    pub fn left_mul_matrix(&self) -> DenseMatrix<T> {
        let cols: Vec<Vec<T>> = (0..8).map(|c| (self * &Self::basis(c)).coeffs.to_vec()).collect();
        DenseMatrix::from_columns(&cols).expect("8x8")
    }
}

pub(crate) fn right_mul_matrix_with<T: Ring>(u: &Octonion<T>, table: &MultiplicationTable) -> DenseMatrix<T> {
    let cols: Vec<Vec<T>> = (0..8).map(|c| Octonion::<T>::basis(c).mul_with(u, table).coeffs.to_vec()).collect();
    DenseMatrix::from_columns(&cols).expect("8x8")
}

impl<T: Ring + std::ops::Div<Output = T>> Octonion<T> {
    /// `a^{-1} = ||a||^{-2} a*`; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().map(|c| c.clone() / n.clone()))
    }
}

impl Octonion<Rational> {
    pub fn to_f64(&self) -> Octonion<f64> {
        self.map(rat_to_f64)
    }
}

impl Octonion<f64> {
    pub fn to_complex(&self) -> Bioctonion {
        self.map(|&x| Complex64::new(x, 0.0))
    }
}

/// Matrix of `X -> X u` for an imaginary octonion `u`, as doubles.
pub fn j_op(u: &Octonion<Rational>) -> Result<DenseMatrix> {
    if !u.re().is_zero() {
        return Err(Error::validation("j_op needs an imaginary octonion (<u,1> = 0)"));
    }
    Ok(u.right_mul_matrix().map(rat_to_f64))
}

impl<T: Ring> Add for &Octonion<T> {
    type Output = Octonion<T>;

    fn add(self, rhs: Self) -> Octonion<T> {
        Octonion { coeffs: std::array::from_fn(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()) }
    }
}

impl<T: Ring> Sub for &Octonion<T> {
    type Output = Octonion<T>;

    fn sub(self, rhs: Self) -> Octonion<T> {
        Octonion { coeffs: std::array::from_fn(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()) }
    }
}

impl<T: Ring> Neg for &Octonion<T> {
    type Output = Octonion<T>;

    fn neg(self) -> Octonion<T> {
        self.map(|c| -c.clone())
    }
}

/// Product in the canonical table.
impl<T: Ring> Mul for &Octonion<T> {
    type Output = Octonion<T>;

    fn mul(self, rhs: Self) -> Octonion<T> {
        self.mul_with(rhs, MultiplicationTable::canonical())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl<T: Ring> $tr for Octonion<T> {
            type Output = Octonion<T>;
            fn $f(self, rhs: Self) -> Octonion<T> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<T: Ring> Neg for Octonion<T> {
    type Output = Octonion<T>;

    fn neg(self) -> Octonion<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    type O = Octonion<Rational>;

    fn e(i: usize) -> O {
        O::basis(i)
    }

    #[test]
    fn unit_law() {
        let a = O::new(std::array::from_fn(|i| rat(i as i64 - 3)));
        assert_eq!(&O::one() * &a, a);
        assert_eq!(&a * &O::one(), a);
    }

    #[test]
    fn anchor_products() {
        assert_eq!(&e(1) * &e(2), e(3));
        assert_eq!(&e(1) * &e(4), e(5));
        assert_eq!(&e(1) * &e(6), -e(7));
    }

    #[test]
    fn conjugation() {
        assert_eq!(O::one().conj(), O::one());
        for i in 1..8 {
            assert_eq!(e(i).conj(), -e(i));
        }
        let lhs = (&e(1) * &e(2)).conj();
        assert_eq!(lhs, -e(3));
        assert_eq!(lhs, &e(2).conj() * &e(1).conj());
    }

    #[test]
    fn inverse_is_exact() {
        let a = O::new(std::array::from_fn(|i| rat(2 * i as i64 - 5)));
        assert_eq!(&a * &a.inverse().unwrap(), O::one());
        assert!(O::zero().inverse().is_none());
    }

    #[test]
    fn j_op_basics() {
        let j1 = j_op(&e(1)).unwrap();
        assert_eq!(j1.matvec(&crate::numkit::vecops::unit(8, 0)), crate::numkit::vecops::unit(8, 1));
        assert!(j_op(&O::one()).is_err());
        let id = DenseMatrix::<f64>::identity(8);
        for i in 1..8 {
            let ji = j_op(&e(i)).unwrap();
            assert_eq!(&ji * &ji, -&id);
            assert_eq!(ji.skew_residual(), 0.0);
            for j in 1..8 {
                if i != j {
                    let jj = j_op(&e(j)).unwrap();
                    assert_eq!((&(&ji * &jj) + &(&jj * &ji)).max_abs(), 0.0);
                }
            }
        }
    }

    #[test]
    fn j_op_is_orthogonal_for_unit_u() {
        // u = (3 e1 + 4 e5) / 5
        let u = O::new(std::array::from_fn(|i| match i {
            1 => crate::scalar::rat_frac(3, 5),
            5 => crate::scalar::rat_frac(4, 5),
            _ => rat(0),
        }));
        let m = j_op(&u).unwrap();
        assert!(m.orthogonality_residual() < 1e-15);
        assert_eq!(m.skew_residual(), 0.0);
    }
}
