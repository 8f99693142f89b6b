//! Covariant-derivative models of an octonionic curvature tensor and the
//! residuals that certify local symmetry.

mod fdiff;
mod field;
mod lemma;
mod model;

pub use fdiff::{expm, finite_difference_check, fit_rotation_generator, FdComparison, FD_STEP};
pub use field::{bianchi_residual, case_b_residual, quaternionic_span, DerivativeField, TangencyResidual};
pub use lemma::{
    lemma_oct_defect, lemma_oct_f, lemma_oct_l, lemma_oct_quadratic_forms, lemma_oct_symbolic, QuadraticPair,
};
pub use model::ConnectionModel;

use crate::numkit::SampleRng;
use crate::octonion::{random_integer_octonion, Octonion};
use crate::scalar::Rational;

/// Flagship tolerance, relative to [`ConnectionModel::residual_scale`].
pub const FLAGSHIP_TOL: f64 = 1e-9;
/// Absolute tolerance for the second Bianchi sum of a model.
pub const BIANCHI_TOL: f64 = 1e-9;
/// Tolerance for the differentiated Clifford relations.
pub const NABLA_TOL: f64 = 1e-11;
/// Agreement of the finite-difference oracle on unit inputs.
pub const FD_TOL: f64 = 1e-6;

/// Seeded model with small integer `m` and distinct integer eigenvalues.
pub fn random_model(rng: &mut SampleRng) -> ConnectionModel {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let m: Octonion<Rational> = random_integer_octonion(rng, 3);
    let mut pool: Vec<i32> = (-9..=9).collect();
    pool.shuffle(rng);
    let scale = rng.random_range(1..=3) as f64;
    let lambda = std::array::from_fn(|i| pool[i] as f64 / scale);
    ConnectionModel::new(m, lambda).expect("rho7 has product +I")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffstruct::case_b_family;
    use crate::numkit::{gaussian_vector, rng_from_seed, unit_vector, vecops};
    use crate::scalar::{rat, rat_frac};
    use num_traits::Zero;

    fn model(seed: u64) -> ConnectionModel {
        random_model(&mut rng_from_seed(seed))
    }

    #[test]
    fn a_map_is_imaginary() {
        let mut rng = rng_from_seed(1);
        for _ in 0..100 {
            let md = random_model(&mut rng);
            let u = random_integer_octonion(&mut rng, 5);
            assert!(md.a_map(&u).re().is_zero());
        }
        let md = model(2);
        let im = md.a_map(&Octonion::one());
        let mut expect = md.m().clone();
        expect = &expect - &Octonion::one().scale(&md.m().re());
        assert_eq!(im, expect);
    }

    #[test]
    fn b_form_antisymmetric_exactly() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let md = random_model(&mut rng);
            let y = random_integer_octonion(&mut rng, 4);
            for i in 1..8 {
                for j in (1..8).filter(|&j| j != i) {
                    let s = md.b_form_exact(i, j, &y).unwrap() + md.b_form_exact(j, i, &y).unwrap();
                    assert!(s.is_zero());
                }
            }
        }
        assert!(model(4).b_form(3, 3, &[0.0; 8]).is_err());
    }

    #[test]
    fn b_form_known_value() {
        // e1 e3 = -e2 and e2 e2 = -1, so (e1 e3) e2 = 1.
        let md = ConnectionModel::new(Octonion::basis(1), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap();
        let y = Octonion::new([rat(2), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0), rat(0)]);
        assert_eq!(md.b_form_exact(2, 3, &y).unwrap(), rat(-2));
    }

    #[test]
    fn zero_m_gives_zero_derivative() {
        let md = ConnectionModel::new(Octonion::zero(), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap();
        let u = gaussian_vector(8, &mut rng_from_seed(5));
        for i in 1..8 {
            assert_eq!(md.nabla_j(&u, i).unwrap().max_abs(), 0.0);
        }
        assert_eq!(vecops::max_abs(&md.symmetric_residual(&u, &u)), 0.0);
    }

    #[test]
    fn nabla_preserves_clifford_relations() {
        for seed in 0..5 {
            let f = DerivativeField::from(&model(seed));
            let t = f.tangency_residual();
            assert!(t.skew < NABLA_TOL, "{t:?}");
            assert!(t.anticommutation < NABLA_TOL, "{t:?}");
        }
    }

    #[test]
    fn expanded_nabla_jx_matches_matrix() {
        let md = model(6);
        let x = gaussian_vector(8, &mut rng_from_seed(7));
        for i in 1..8 {
            let lhs = md.nabla_j(&x, i).unwrap().matvec(&x);
            let rhs = md.nabla_j_x_expanded(&x, i).unwrap();
            assert!(vecops::max_abs(&vecops::sub(&lhs, &rhs)) < NABLA_TOL);
        }
    }

    #[test]
    fn flagship_residual_vanishes() {
        let mut rng = rng_from_seed(8);
        for _ in 0..5 {
            let md = random_model(&mut rng);
            for _ in 0..20 {
                let x = gaussian_vector(8, &mut rng);
                let y = gaussian_vector(8, &mut rng);
                let r = vecops::norm(&md.symmetric_residual(&x, &y));
                assert!(r < FLAGSHIP_TOL * md.residual_scale(&x, &y), "residual {r}");
            }
        }
    }

    #[test]
    fn sum_of_projections_identity() {
        let f = crate::cliffrep::rho7(1);
        let mut rng = rng_from_seed(9);
        let (u, x) = (random_integer_octonion(&mut rng, 4), random_integer_octonion(&mut rng, 4));
        let mut acc = Octonion::<Rational>::zero();
        for i in 1..8 {
            let jx = &x * &Octonion::basis(i);
            acc = &acc + &jx.scale(&u.dot(&jx));
        }
        let expect = &u.scale(&x.norm_sq()) - &x.scale(&u.dot(&x));
        assert_eq!(acc, expect);
        assert_eq!(f.len(), 7);
    }

    #[test]
    fn model_bianchi_routes_agree() {
        let mut rng = rng_from_seed(10);
        for _ in 0..3 {
            let f = DerivativeField::from(&random_model(&mut rng));
            for _ in 0..10 {
                let (u, x, y) =
                    (gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng));
                let e = bianchi_residual(&f, &u, &x, &y);
                let t = f.bianchi_via_tensor(&u, &x, &y);
                assert!((e - t).abs() < 1e-9 * (1.0 + t.abs()), "{e} vs {t}");
                // the flagship contraction of the same tensor vanishes
                let flag = f.derivative_tensor(&x).apply(&x, &y, &x);
                assert!(vecops::norm(&flag) < 1e-9 * (1.0 + vecops::norm(&x).powi(3) * vecops::norm(&y) * 100.0));
            }
        }
    }

    #[test]
    fn model_bianchi_vanishes_when_trivial() {
        let mut rng = rng_from_seed(18);
        let zero_m = DerivativeField::from(
            &ConnectionModel::new(Octonion::zero(), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap(),
        );
        let equal =
            DerivativeField::from(&ConnectionModel::new(random_integer_octonion(&mut rng, 3), [2.0; 7]).unwrap());
        for _ in 0..10 {
            let (u, x, y) = (gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng));
            assert_eq!(bianchi_residual(&zero_m, &u, &x, &y), 0.0);
            assert!(bianchi_residual(&equal, &u, &x, &y).abs() < BIANCHI_TOL);
        }
    }

    #[test]
    fn routes_agree_on_random_tangent_fields() {
        let mut rng = rng_from_seed(11);
        let fam = case_b_family();
        let f = DerivativeField::random_tangent(fam, 0.5, vec![2.0, -1.0, 3.0], 1.0, &mut rng).unwrap();
        let t = f.tangency_residual();
        assert!(t.anticommutation < 1e-10);
        let (u, x, y) = (gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng));
        let e = f.bianchi_expanded(&u, &x, &y);
        let v = f.bianchi_via_tensor(&u, &x, &y);
        assert!((e - v).abs() < 1e-9 * (1.0 + v.abs()), "{e} vs {v}");
        assert!(e.abs() > 1e-3, "converse detector should see a residual");
    }

    #[test]
    fn gradient_of_lambda1_shows_up() {
        let fam = crate::cliffrep::rho7(1);
        let mut rng = rng_from_seed(12);
        let y = gaussian_vector(8, &mut rng);
        let x = fam.op(0).matvec(&y);
        // U orthogonal to Y and J_1 Y
        let span = vecops::gram_schmidt(&[y.clone(), x.clone()], 1e-12);
        let mut u = gaussian_vector(8, &mut rng);
        for b in &span {
            let c = vecops::dot(&u, b);
            vecops::axpy(&mut u, -c, b);
        }
        let g = gaussian_vector(8, &mut rng);
        let f = DerivativeField::parallel(fam, 0.0, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0])
            .unwrap()
            .with_grad_lambda(1, g.clone())
            .unwrap();
        let r = bianchi_residual(&f, &u, &x, &y);
        let expect = -vecops::dot(&y, &y).powi(2) * vecops::dot(&g, &u);
        assert!((r - expect).abs() < 1e-9 * (1.0 + expect.abs()), "{r} vs {expect}");
        assert!(expect.abs() > 1e-6);
    }

    #[test]
    fn case_b_reduction() {
        let fam = case_b_family();
        let mut rng = rng_from_seed(13);
        let f = DerivativeField::random_tangent(fam.clone(), 1.0, vec![3.0, -2.0, 5.0], 1.0, &mut rng).unwrap();
        let y = gaussian_vector(8, &mut rng);
        let span = quaternionic_span(&fam, &y);
        assert_eq!(span.len(), 4);
        let comp = vecops::orthogonal_complement(&span, 8, 1e-12);
        let x = comp[0].clone();
        let u = fam.op(0).matvec(&x);
        assert!(span.iter().all(|b| vecops::dot(b, &u).abs() < 1e-12));
        let r = case_b_residual(&f, &u, &x, &y).unwrap();
        let ju = fam.op(0).matvec(&u);
        let dy = f.nabla_j(&y, 1).unwrap().matvec(&y);
        let expect = -vecops::dot(&x, &x)
            * (vecops::dot(&y, &y) * f.d_lambda0(&u) - (f.lambda()[0] - f.lambda0()) * vecops::dot(&dy, &ju));
        assert!((r - expect).abs() < 1e-9 * (1.0 + expect.abs()), "{r} vs {expect}");
        let flat = DerivativeField::parallel(fam, 1.0, vec![3.0, -2.0, 5.0]).unwrap();
        assert!(case_b_residual(&flat, &u, &x, &y).unwrap().abs() < 1e-10);
        let bad = DerivativeField::parallel(crate::cliffrep::rho7(1).sub_family(3), 0.0, vec![1.0; 3]).unwrap();
        assert!(case_b_residual(&bad, &u, &x, &y).is_err());
    }

    #[test]
    fn finite_difference_oracle_agrees() {
        let mut rng = rng_from_seed(14);
        let md = random_model(&mut rng);
        for _ in 0..3 {
            let (w, v, z) = (unit_vector(8, &mut rng), unit_vector(8, &mut rng), unit_vector(8, &mut rng));
            let c = finite_difference_check(&md, &w, &v, &z, FD_STEP).unwrap();
            assert!(c.fit_residual < 1e-9, "fit {}", c.fit_residual);
            assert!(c.max_abs_error < FD_TOL, "fd error {}", c.max_abs_error);
        }
    }

    #[test]
    fn lemma_identity_exact() {
        let mut rng = rng_from_seed(15);
        let e = Octonion::basis(1);
        for _ in 0..50 {
            let a = random_integer_octonion(&mut rng, 4);
            let b = random_integer_octonion(&mut rng, 4);
            let p = random_integer_octonion(&mut rng, 4);
            let y = random_integer_octonion(&mut rng, 4);
            assert!(lemma_oct_defect(&a, &b, &p, &e, &y).unwrap().is_zero());
        }
        let half = rat_frac(1, 2);
        let bad = Octonion::new([half.clone(), half, rat(0), rat(0), rat(0), rat(0), rat(0), rat(0)]);
        let z = Octonion::zero();
        assert!(lemma_oct_f(&z, &z, &z, &bad, &z).is_err());
    }

    #[test]
    fn lemma_identity_symbolic() {
        let mut rng = rng_from_seed(16);
        let a = random_integer_octonion(&mut rng, 3);
        let b = random_integer_octonion(&mut rng, 3);
        let p = random_integer_octonion(&mut rng, 3);
        let e = Octonion::new([rat(0), rat_frac(3, 5), rat(0), rat(0), rat_frac(4, 5), rat(0), rat(0), rat(0)]);
        assert!(lemma_oct_symbolic(&a, &b, &p, &e).unwrap());
    }

    #[test]
    fn quadratic_forms_are_divisible() {
        let mut rng = rng_from_seed(17);
        let a = random_integer_octonion(&mut rng, 3);
        let b = random_integer_octonion(&mut rng, 3);
        let p = random_integer_octonion(&mut rng, 3);
        for k in 1..8 {
            let q = lemma_oct_quadratic_forms(&a, &b, &p, k).unwrap();
            assert!(q.norm_defect().is_zero());
            let sum = &(&q.c * &q.c) + &(&q.d * &q.d);
            assert!(sum.divisible_by_norm().unwrap());
            assert!(q.c.divisible_by_norm().unwrap());
            assert!(q.d.divisible_by_norm().unwrap());
        }
    }
}
