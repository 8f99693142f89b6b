use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::polyjacobi::Poly;
use crate::scalar::{Rational, Ring};

fn check_e<T: Ring>(e: &Octonion<T>) -> Result<()> {
    if !e.re().is_zero() || !e.norm_sq().is_one() {
        return Err(Error::validation("e must be a unit imaginary octonion"));
    }
    Ok(())
}

/// `L(Y) = <a,Y> 1 + <b,Y> e + Y* p`.
pub fn lemma_oct_l<T: Ring>(
    a: &Octonion<T>,
    b: &Octonion<T>,
    p: &Octonion<T>,
    e: &Octonion<T>,
    y: &Octonion<T>,
) -> Octonion<T> {
    &(&Octonion::one().scale(&a.dot(y)) + &e.scale(&b.dot(y))) + &(&y.conj() * p)
}

fn f_unchecked<T: Ring>(
    a: &Octonion<T>,
    b: &Octonion<T>,
    p: &Octonion<T>,
    e: &Octonion<T>,
    y: &Octonion<T>,
) -> Octonion<T> {
    let ye = y * e;
    &(&e.scale(&a.dot(y)) - &Octonion::one().scale(&b.dot(y))) - &(&ye.conj() * p)
}

/// `F(Y) = <a,Y> e - <b,Y> 1 - (Ye)* p`, the partner with `(Ye) L(Y) = Y F(Y)`.
pub fn lemma_oct_f(
    a: &Octonion<Rational>,
    b: &Octonion<Rational>,
    p: &Octonion<Rational>,
    e: &Octonion<Rational>,
    y: &Octonion<Rational>,
) -> Result<Octonion<Rational>> {
    check_e(e)?;
    Ok(f_unchecked(a, b, p, e, y))
}

/// `(Ye) L(Y) - Y F(Y)`, exactly.
pub fn lemma_oct_defect(
    a: &Octonion<Rational>,
    b: &Octonion<Rational>,
    p: &Octonion<Rational>,
    e: &Octonion<Rational>,
    y: &Octonion<Rational>,
) -> Result<Octonion<Rational>> {
    let f = lemma_oct_f(a, b, p, e, y)?;
    Ok(&(&(y * e) * &lemma_oct_l(a, b, p, e, y)) - &(y * &f))
}

fn lift(o: &Octonion<Rational>, nvars: usize) -> Octonion<Poly> {
    o.map(|c| Poly::constant(nvars, c.clone()))
}

/// Checks `(Ye) L(Y) = Y F(Y)` as an identity of octonion-valued
/// polynomials in the eight coordinates of `Y`.
pub fn lemma_oct_symbolic(
    a: &Octonion<Rational>,
    b: &Octonion<Rational>,
    p: &Octonion<Rational>,
    e: &Octonion<Rational>,
) -> Result<bool> {
    check_e(e)?;
    let y = Octonion::new(std::array::from_fn(|i| Poly::var(8, i)));
    let (a, b, p, e) = (lift(a, 8), lift(b, 8), lift(p, 8), lift(e, 8));
    let lhs = &(&y * &e) * &lemma_oct_l(&a, &b, &p, &e, &y);
    let rhs = &y * &f_unchecked(&a, &b, &p, &e, &y);
    Ok(lhs == rhs)
}

/// Quadratic forms on `span(1, e_k)^perp` built from `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPair {
    /// Index `k` of the basis unit `e = e_k`.
    pub k: usize,
    /// `C(u) = <L~(u), u>` in the six coordinates of `u`.
    pub c: Poly,
    /// `D(u) = <L~(u), u e>`.
    pub d: Poly,
    /// `|L~(u)|^2`.
    pub l_norm_sq: Poly,
}

impl QuadraticPair {
    /// `|u|^2 |L~|^2 - C^2 - D^2`, zero when `L~(u)` lies in `span(u, ue)`.
    pub fn norm_defect(&self) -> Poly {
        let n = Poly::norm_sq(6);
        &(&(&n * &self.l_norm_sq) - &(&self.c * &self.c)) - &(&self.d * &self.d)
    }
}

/// For `u` in `span(1, e_k)^perp` let `L^(u) = L(u) - u* L(1)` and `L~` its
/// projection to `span(1, e_k)^perp`. Returns `C`, `D` and `|L~|^2` as
/// polynomials in the six coordinates of `u`, ordered by basis index.
pub fn lemma_oct_quadratic_forms(
    a: &Octonion<Rational>,
    b: &Octonion<Rational>,
    p: &Octonion<Rational>,
    k: usize,
) -> Result<QuadraticPair> {
    if !(1..=7).contains(&k) {
        return Err(Error::validation(format!("unit index {k} outside 1..=7")));
    }
    let free: Vec<usize> = (1..8).filter(|&i| i != k).collect();
    let mut coords: [Poly; 8] = std::array::from_fn(|_| Poly::zero_in(6));
    for (s, &i) in free.iter().enumerate() {
        coords[i] = Poly::var(6, s);
    }
    let u = Octonion::new(coords);
    let e = Octonion::<Poly>::basis(k);
    let (a, b, p) = (lift(a, 6), lift(b, 6), lift(p, 6));
    let l1 = lemma_oct_l(&a, &b, &p, &e, &Octonion::one());
    let hat = &lemma_oct_l(&a, &b, &p, &e, &u) - &(&u.conj() * &l1);
    let tilde =
        Octonion::new(std::array::from_fn(
            |i| {
                if i == 0 || i == k {
                    Poly::zero_in(6)
                } else {
                    hat.coeffs()[i].clone()
                }
            },
        ));
    let c = tilde.dot(&u).with_nvars(6);
    let d = tilde.dot(&(&u * &e)).with_nvars(6);
    let l_norm_sq = tilde.norm_sq().with_nvars(6);
    Ok(QuadraticPair { k, c, d, l_norm_sq })
}
