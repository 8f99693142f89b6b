//! The standard octonion identity list, checked exactly.

use std::collections::BTreeMap;

use super::algebra::Octonion;
use crate::error::{Error, Result};
use crate::scalar::{ring_int, Ring};

pub const CONJ_INVOLUTION: &str = "a** = a";
pub const CONJ_ANTIHOM: &str = "(ab)* = b*a*";
pub const CONJ_NORM: &str = "aa* = |a|^2 1";
pub const CONJ_ISOMETRY: &str = "<a*,b*> = <a,b>";
pub const ADJOINT: &str = "<a,bc> = <b*a,c> = <ac*,b>";
pub const LEFT_ALTERNATIVE: &str = "a(ab) = (a^2)b";
pub const RIGHT_ALTERNATIVE: &str = "(ba)a = b(a^2)";
pub const CONJ_INVERSE: &str = "a(a*b) = (ba)a* = |a|^2 b";
pub const RIGHT_POLARIZED: &str = "(ab*)c + (ac*)b = 2<b,c>a";
pub const LEFT_POLARIZED: &str = "a(b*c) + b(a*c) = 2<a,b>c";
pub const NORM_COMPOSITION: &str = "|ab|^2 = |a|^2 |b|^2";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub results: BTreeMap<&'static str, bool>,
    pub inputs: String,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.results.values().all(|&ok| ok)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.results.iter().filter(|(_, ok)| !**ok).map(|(k, _)| *k).collect()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.failures().first() {
            Some(&identity) => Err(Error::IdentityFailed { identity, inputs: self.inputs }),
            None => Ok(self),
        }
    }
}

/// Evaluates every identity on `(a, b, c)`. The norm identity is checked in
/// squared form so it stays inside the ring.
pub fn identity_suite<T: Ring>(a: &Octonion<T>, b: &Octonion<T>, c: &Octonion<T>) -> IdentityReport {
    let two = ring_int::<T>(2);
    let (ac, bc, cc) = (a.conj(), b.conj(), c.conj());
    let a2 = a * a;
    let na = a.norm_sq();
    let mut r = BTreeMap::new();

    r.insert(CONJ_INVOLUTION, ac.conj() == *a);
    r.insert(CONJ_ANTIHOM, (a * b).conj() == &bc * &ac);
    r.insert(CONJ_NORM, a * &ac == Octonion::one().scale(&na));
    r.insert(CONJ_ISOMETRY, ac.dot(&bc) == a.dot(b));
    let abc = a.dot(&(b * c));
    r.insert(ADJOINT, abc == (&bc * a).dot(c) && abc == (a * &cc).dot(b));
    r.insert(LEFT_ALTERNATIVE, a * &(a * b) == &a2 * b);
    r.insert(RIGHT_ALTERNATIVE, &(b * a) * a == b * &a2);
    let nb = b.scale(&na);
    r.insert(CONJ_INVERSE, a * &(&ac * b) == nb && &(b * a) * &ac == nb);
    r.insert(RIGHT_POLARIZED, &(&(a * &bc) * c) + &(&(a * &cc) * b) == a.scale(&(two.clone() * b.dot(c))));
    r.insert(LEFT_POLARIZED, &(a * &(&bc * c)) + &(b * &(&ac * c)) == c.scale(&(two * a.dot(b))));
    r.insert(NORM_COMPOSITION, (a * b).norm_sq() == na * b.norm_sq());

    let inputs = if r.values().all(|&ok| ok) {
        String::new()
    } else {
        format!("a={:?}, b={:?}, c={:?}", a.coeffs(), b.coeffs(), c.coeffs())
    };
    IdentityReport { results: r, inputs }
}
