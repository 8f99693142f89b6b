//! Spans of right multiplications on the isotropic cone of the bioctonions.

use num_complex::Complex64;

use super::algebra::{Bioctonion, Octonion};
use super::table::MultiplicationTable;
use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Relative pivot threshold for complex rank decisions.
pub const PIVOT_TOL: f64 = 1e-10;
/// Isotropy threshold relative to `sum |Y_i|^2`.
pub const ISOTROPY_TOL: f64 = 1e-12;

/// `sum_i lambda_i <X e_i, U> (X e_i)`, the extra generators of the span
/// `L Y`. Generic so the quoted values can be checked exactly.
pub fn lemma_generator<T: Ring>(
    table: &MultiplicationTable,
    lambda: &[T; 7],
    x: &Octonion<T>,
    u: &Octonion<T>,
) -> Octonion<T> {
    let mut acc = Octonion::zero();
    for (i, l) in lambda.iter().enumerate() {
        let jx = x.mul_with(&Octonion::basis(i + 1), table);
        let coef = l.clone() * jx.dot(u);
        acc = &acc + &jx.scale(&coef);
    }
    acc
}

fn hermitian_norm_sq(y: &Bioctonion) -> f64 {
    y.coeffs().iter().map(Complex64::norm_sqr).sum()
}

pub fn is_isotropic(y: &Bioctonion) -> bool {
    y.dot(y).norm() <= ISOTROPY_TOL * hermitian_norm_sq(y)
}

/// Indices of a maximal linearly independent subset, found by incremental
/// complex row reduction. A candidate is independent when its reduced
/// remainder has an entry above `rel_tol` times the largest entry seen.
pub fn independent_subset(vectors: &[[Complex64; 8]], rel_tol: f64) -> Vec<usize> {
    let scale = vectors.iter().flat_map(|v| v.iter()).fold(0.0_f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut echelon: Vec<([Complex64; 8], usize)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = *v;
        for (row, pivot) in &echelon {
            let f = w[*pivot] / row[*pivot];
            for k in 0..8 {
                w[k] -= f * row[k];
            }
        }
        let (pivot, mag) =
            w.iter()
                .enumerate()
                .map(|(k, z)| (k, z.norm()))
                .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if mag > rel_tol * scale {
            echelon.push((w, pivot));
            chosen.push(idx);
        }
    }
    chosen
}

fn independent(vectors: Vec<Bioctonion>) -> Vec<Bioctonion> {
    let raw: Vec<[Complex64; 8]> = vectors.iter().map(|v| *v.coeffs()).collect();
    independent_subset(&raw, PIVOT_TOL).into_iter().map(|i| vectors[i].clone()).collect()
}

/// Basis of `J Y = span_C(Y e_1, ..., Y e_7)`, chosen among the generators.
pub fn jspace(y: &Bioctonion) -> Result<Vec<Bioctonion>> {
    if hermitian_norm_sq(y) == 0.0 {
        return Err(Error::validation("jspace needs a nonzero bioctonion"));
    }
    Ok(independent((1..8).map(|i| y * &Octonion::basis(i)).collect()))
}

/// Basis of `L Y = J Y + span{ sum_i lambda_i <J_i X, U> J_i X : X, U in J Y }`.
///
/// The extra generators are quadratic in `X`, so `X` runs over the basis
/// of `J Y` and over pairwise sums of basis vectors.
pub fn lspace(y: &Bioctonion, lambda: &[f64; 7]) -> Result<Vec<Bioctonion>> {
    if !is_isotropic(y) {
        return Err(Error::validation("lspace needs an isotropic bioctonion"));
    }
    let basis = jspace(y)?;
    let lam: [Complex64; 7] = lambda.map(|l| Complex64::new(l, 0.0));
    let table = MultiplicationTable::canonical();
    let mut xs = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            xs.push(&basis[i] + &basis[j]);
        }
    }
    let mut gens = basis.clone();
    for x in &xs {
        for u in &basis {
            gens.push(lemma_generator(table, &lam, x, u));
        }
    }
    Ok(independent(gens))
}

/// Largest `|<v, w>|` over pairs from `vectors` (including `v = w`).
pub fn max_pairwise_product(vectors: &[Bioctonion]) -> f64 {
    let mut m = 0.0_f64;
    for (i, v) in vectors.iter().enumerate() {
        for w in &vectors[i..] {
            m = m.max(v.dot(w).norm());
        }
    }
    m
}

/// A seeded isotropic bioctonion `a + i b` with `a ⊥ b`, `|a| = |b|`.
pub fn random_isotropic(rng: &mut crate::numkit::SampleRng) -> Bioctonion {
    use crate::numkit::vecops;
    let a = crate::numkit::vecops::normalized(&random_gauss(rng)).expect("nonzero");
    let mut b = random_gauss(rng);
    let c = vecops::dot(&a, &b);
    vecops::axpy(&mut b, -c, &a);
    let b = vecops::normalized(&b).expect("nonzero");
    Octonion::new(std::array::from_fn(|k| Complex64::new(a[k], b[k])))
}

fn random_gauss(rng: &mut crate::numkit::SampleRng) -> Vec<f64> {
    use rand::Rng;
    (0..8).map(|_| rng.sample(rand_distr::StandardNormal)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::rng_from_seed;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bi(pairs: &[(usize, Complex64)]) -> Bioctonion {
        let mut v = [c(0.0, 0.0); 8];
        for &(i, z) in pairs {
            v[i] = z;
        }
        Octonion::new(v)
    }

    fn in_span(basis: &[Bioctonion], v: &Bioctonion) -> bool {
        let mut all: Vec<[Complex64; 8]> = basis.iter().map(|b| *b.coeffs()).collect();
        all.push(*v.coeffs());
        independent_subset(&all, PIVOT_TOL).len() == basis.len()
    }

    #[test]
    fn zero_divisor() {
        let p = bi(&[(0, c(0.0, 1.0)), (1, c(1.0, 0.0))]);
        let q = bi(&[(0, c(0.0, 1.0)), (1, c(-1.0, 0.0))]);
        assert!((&p * &q).is_zero());
    }

    #[test]
    fn jspace_of_isotropic_unit() {
        let y = bi(&[(0, c(0.0, 1.0)), (1, c(1.0, 0.0))]);
        let span = jspace(&y).unwrap();
        assert_eq!(span.len(), 4);
        for v in [
            y.clone(),
            bi(&[(2, c(0.0, 1.0)), (3, c(1.0, 0.0))]),
            bi(&[(4, c(0.0, 1.0)), (5, c(1.0, 0.0))]),
            bi(&[(6, c(0.0, 1.0)), (7, c(-1.0, 0.0))]),
        ] {
            assert!(in_span(&span, &v), "{v:?} not in span");
        }
        assert!(max_pairwise_product(&span) < 1e-12);
    }

    #[test]
    fn jspace_of_one_is_imaginary_part() {
        let span = jspace(&Octonion::<f64>::one().to_complex()).unwrap();
        assert_eq!(span.len(), 7);
        assert!(span.iter().all(|v| v.coeffs()[0].norm() == 0.0));
    }

    #[test]
    fn jspace_rejects_zero() {
        assert!(jspace(&Bioctonion::zero()).is_err());
    }

    #[test]
    fn random_isotropic_spans_are_four_dimensional() {
        let mut rng = rng_from_seed(42);
        for _ in 0..20 {
            let y = random_isotropic(&mut rng);
            assert!(is_isotropic(&y));
            let span = jspace(&y).unwrap();
            assert_eq!(span.len(), 4);
            assert!(max_pairwise_product(&span) < 1e-12);
        }
    }

    #[test]
    fn lspace_dimensions() {
        let y = bi(&[(0, c(0.0, 1.0)), (1, c(1.0, 0.0))]);
        let distinct = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
        assert_eq!(lspace(&y, &distinct).unwrap().len(), 7);
        let equal = [2.5; 7];
        assert_eq!(lspace(&y, &equal).unwrap().len(), 4);
        assert!(lspace(&Octonion::<f64>::one().to_complex(), &distinct).is_err());
    }
}
