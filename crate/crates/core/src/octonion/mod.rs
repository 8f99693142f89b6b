//! Octonions over an arbitrary scalar ring with a fixed canonical basis.

mod algebra;
mod bioct;
mod identities;
mod table;

#[allow(unused_imports)]
pub(crate) use algebra::right_mul_matrix_with;
pub use algebra::{j_op, Bioctonion, Octonion};
pub use bioct::{
    independent_subset, is_isotropic, jspace, lemma_generator, lspace, max_pairwise_product, random_isotropic,
    ISOTROPY_TOL, PIVOT_TOL,
};
pub use identities::*;
pub use table::{
    validate_table, BasisProduct, MultiplicationTable, TableVerdict, TableViolation, ANCHOR_PRODUCTS, CANONICAL_LINES,
};

use crate::scalar::{rat, Rational};

/// Seeded octonion with integer coefficients in `[-bound, bound]`.
pub fn random_integer_octonion(rng: &mut crate::numkit::SampleRng, bound: i64) -> Octonion<Rational> {
    use rand::Rng;
    Octonion::new(std::array::from_fn(|_| rat(rng.random_range(-bound..=bound))))
}
