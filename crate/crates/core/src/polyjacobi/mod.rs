//! Exact polynomials modulo `|X|^2`, the eigenprojection polynomial `W_X`
//! and the Gram identities of linear Clifford families.

mod gram;
mod poly;
mod wproj;

pub use gram::{gram_residuals, GramReport, HomPolyVec, PolyGramSystem};
pub use poly::Poly;
pub use wproj::{eigenprojection_w, RHO_TOL, ZERO_TOL};

use crate::error::Result;

/// Canonical representative of `p` in `R[X]/(|X|^2)`.
pub fn reduce_mod_norm(p: &Poly) -> Result<Poly> {
    p.reduce_mod_norm()
}

/// Whether `|X|^2` divides `p`.
pub fn divisible_by_norm(p: &Poly) -> Result<bool> {
    p.divisible_by_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffrep::rho7;
    use crate::cliffstruct::{build_cliff, build_cliff_exact, exact_family, shift_constant, CliffordStructure};
    use crate::error::Error;
    use crate::numkit::{rng_from_seed, sym_eigen, unit_vector, vecops, DenseMatrix};
    use crate::scalar::{rat, Rational};

    #[test]
    fn gram_identities_for_cliff3() {
        let ops = exact_family(&rho7(1)).unwrap();
        let mu = [rat(2), rat(3), rat(4)];
        let r = build_cliff_exact(&ops[..3], 8, &rat(0), &mu);
        let sys = PolyGramSystem::from_linear_family(&ops[..3], &mu).unwrap();
        let rep = gram_residuals(&sys, &r, &[1, 2, 3], 50, 4).unwrap();
        assert!(rep.orthonormal_columns);
        assert!(rep.reproduces_jacobi);
        assert!(rep.pass(1e-10), "{rep:?}");
    }

    #[test]
    fn gram_detects_constant_part() {
        let ops = exact_family(&rho7(1)).unwrap();
        let mu = [rat(2), rat(3)];
        let r = build_cliff_exact(&ops[..2], 8, &rat(1), &mu);
        let sys = PolyGramSystem::from_linear_family(&ops[..2], &mu).unwrap();
        let rep = gram_residuals(&sys, &r, &[], 1, 0).unwrap();
        assert!(rep.orthonormal_columns);
        assert!(!rep.reproduces_jacobi);
    }

    #[test]
    fn gram_vacuous_and_unsupported() {
        let sys = PolyGramSystem::new(Vec::new(), Vec::new()).unwrap();
        let r = build_cliff_exact(&[], 8, &rat(0), &[]);
        assert!(gram_residuals(&sys, &r, &[1], 4, 1).unwrap().pass(0.0));
        let quad = HomPolyVec::new(8, 2, vec![Poly::norm_sq(8); 8]).unwrap();
        let sys = PolyGramSystem::new(vec![quad], vec![rat(1)]).unwrap();
        assert!(matches!(gram_residuals(&sys, &r, &[], 1, 0), Err(Error::Unsupported(_))));
        assert!(HomPolyVec::new(8, 2, vec![Poly::var(8, 0)]).is_err());
    }

    fn shifted_cliff3() -> crate::curvature::AlgebraicCurvatureTensor {
        let cs = CliffordStructure::new(rho7(1).sub_family(3), 1.0, vec![3.0, 3.0, 6.0]).unwrap();
        shift_constant(&build_cliff(&cs).unwrap(), -1.0)
    }

    #[test]
    fn w_projects_onto_target_eigenspace() {
        let r = shifted_cliff3();
        let f = rho7(1);
        let mut rng = rng_from_seed(6);
        for _ in 0..10 {
            let x = unit_vector(8, &mut rng);
            let w = eigenprojection_w(&r, &[0.0, 2.0, 5.0], 1, &x).unwrap();
            assert!((&w * &w).distance(&w) < 1e-9);
            assert!((w.trace() - 2.0).abs() < 1e-9);
            for s in 0..2 {
                let jx = f.op(s).matvec(&x);
                assert!(vecops::norm(&vecops::sub(&w.matvec(&jx), &jx)) < 1e-9);
            }
            let eig = sym_eigen(&w.symmetrized(), 1e-12).unwrap();
            assert_eq!(eig.values.iter().filter(|v| (*v - 1.0).abs() < 1e-9).count(), 2);
        }
    }

    #[test]
    fn w_scales_homogeneously() {
        let r = shifted_cliff3();
        let x = unit_vector(8, &mut rng_from_seed(2));
        let w = eigenprojection_w(&r, &[0.0, 2.0, 5.0], 1, &x).unwrap();
        let c: f64 = 1.7;
        let wc = eigenprojection_w(&r, &[0.0, 2.0, 5.0], 1, &vecops::scale(&x, c)).unwrap();
        assert!(wc.distance(&w.scale(&c.powi(4))) < 1e-9 * c.powi(4));
        // W^2 = |X|^{2k-2} W
        assert!((&wc * &wc).distance(&wc.scale(&c.powi(4))) < 1e-9 * c.powi(8));
    }

    #[test]
    fn w_two_eigenvalue_case_and_errors() {
        let cs = CliffordStructure::new(rho7(1).sub_family(2), 0.0, vec![3.0, 3.0]).unwrap();
        let r = build_cliff(&cs).unwrap();
        let x = vecops::unit(8, 0);
        let w = eigenprojection_w(&r, &[0.0, 3.0], 1, &x).unwrap();
        let b = DenseMatrix::from_columns(&[rho7(1).op(0).matvec(&x), rho7(1).op(1).matvec(&x)]).unwrap();
        assert!(w.distance(&(&b * &b.transpose())) < 1e-12);
        assert!(matches!(eigenprojection_w(&r, &[0.0, 3.0, 3.0], 1, &x), Err(Error::Degenerate(_))));
        assert!(eigenprojection_w(&r, &[1.0, 3.0], 1, &x).is_err());
        assert!(eigenprojection_w(&r, &[0.0, 3.0], 0, &x).is_err());
    }

    #[test]
    fn four_squares_spot_check() {
        let q: Vec<Poly> =
            ["x1 x2", "x3 + x8", "2 x5^2", "x1 + -1 x7"].iter().map(|s| Poly::parse(s, 8).unwrap()).collect();
        let norm = Poly::norm_sq(8);
        let ps: Vec<Poly> = q.iter().map(|qi| norm.clone() * qi.clone()).collect();
        let sum = ps.iter().fold(Poly::zero_in(8), |acc, p| acc + p.clone() * p.clone());
        assert!(divisible_by_norm(&sum).unwrap());
        assert!(ps.iter().all(|p| divisible_by_norm(p).unwrap()));
        let generic = q.iter().fold(Poly::zero_in(8), |acc, p| acc + p.clone() * p.clone());
        assert!(!divisible_by_norm(&generic).unwrap());
    }

    #[test]
    fn reduction_is_a_ring_morphism() {
        let a = Poly::parse("x8^3 + x1 x8 + 2", 8).unwrap();
        let b = Poly::parse("x8^2 x2 + -1 x3^2", 8).unwrap();
        let ra = reduce_mod_norm(&a).unwrap();
        let rb = reduce_mod_norm(&b).unwrap();
        assert_eq!(
            reduce_mod_norm(&(a.clone() * b.clone())).unwrap(),
            reduce_mod_norm(&(ra.clone() * rb.clone())).unwrap()
        );
        assert_eq!(reduce_mod_norm(&ra).unwrap(), ra);
        assert_eq!(reduce_mod_norm(&(a + b)).unwrap(), ra + rb);
        let _: Rational = rat(0);
    }
}
