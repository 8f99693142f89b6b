use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat, rat_to_f64, Rational};

/// Multivariate polynomial with rational coefficients in `x1..x_nvars`.
///
/// Monomials are exponent vectors with trailing zeros trimmed, so the
/// arithmetic does not depend on `nvars`; the declared variable count only
/// matters for reduction modulo `|X|^2`, which eliminates the last variable.
#[derive(Clone, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn mul_monomials(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    out
}

impl Poly {
    pub fn zero_in(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero_in(nvars);
        p.add_term(Vec::new(), c);
        p
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut p = Self::zero_in(nvars);
        p.add_term(e, rat(1));
        p
    }

    /// `x_1^2 + ... + x_nvars^2`.
    pub fn norm_sq(nvars: usize) -> Self {
        (0..nvars).fold(Self::zero_in(nvars), |acc, i| {
            let v = Self::var(nvars, i);
            acc + v.clone() * v
        })
    }

    /// `sum_i c_i x_{i+1}`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let n = coeffs.len();
        coeffs.iter().enumerate().fold(Self::zero_in(n), |acc, (i, c)| acc + Self::var(n, i).scale(c))
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero_in(nvars);
        for (e, c) in terms {
            let e = trim(e);
            if e.len() > nvars {
                return Err(Error::validation(format!("monomial uses x{} with {nvars} variables", e.len())));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        self.nvars = self.nvars.max(e.len());
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn with_nvars(mut self, nvars: usize) -> Self {
        self.nvars = self.nvars.max(nvars);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Whether every monomial has total degree `d` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(self.nvars, rat(1)), |acc, _| acc * self.clone())
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(rat(0), |acc, (e, c)| {
            let m = e.iter().enumerate().fold(c.clone(), |m, (i, &k)| (0..k).fold(m, |m, _| m * &x[i]));
            acc + m
        })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms.iter().fold(0.0, |acc, (e, c)| {
            let m = e.iter().enumerate().fold(rat_to_f64(c), |m, (i, &k)| m * x[i].powi(k as i32));
            acc + m
        })
    }

    /// Substitutes linear forms for the variables: `x_{i+1} -> subs[i]`.
    pub fn substitute(&self, subs: &[Poly]) -> Poly {
        let nvars = subs.iter().map(Poly::nvars).max().unwrap_or(0);
        let mut out = Poly::zero_in(nvars);
        for (e, c) in &self.terms {
            let mut m = Poly::constant(nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m = m * subs[i].clone();
                }
            }
            out = out + m;
        }
        out
    }

    /// Parses `coef x1^a1 ... xn^an` terms separated by `+`; a coefficient
    /// may be an integer or a fraction and may be omitted or carry a sign,
    /// an exponent of one may be omitted.
    pub fn parse(text: &str, nvars: usize) -> Result<Self> {
        let mut p = Self::zero_in(nvars);
        let body = text.trim();
        if body.is_empty() || body == "0" {
            return Ok(p);
        }
        for raw in body.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            let mut coef = rat(1);
            let mut exps = vec![0u32; nvars];
            let mut seen_coef = false;
            for (pos, tok) in term.split_whitespace().enumerate() {
                let (neg, tok) = match tok.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, tok),
                };
                if neg {
                    coef = -coef;
                }
                if tok.is_empty() {
                    continue;
                }
                if let Some(v) = tok.strip_prefix('x') {
                    let (idx, pow) = match v.split_once('^') {
                        Some((i, k)) => (i, k),
                        None => (v, "1"),
                    };
                    let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{tok}`")))?;
                    let pow: u32 = pow.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!("variable x{idx} outside x1..x{nvars}")));
                    }
                    exps[idx - 1] += pow;
                } else {
                    if seen_coef || pos > 0 {
                        return Err(Error::Parse(format!("unexpected token `{tok}` in `{term}`")));
                    }
                    let c = Rational::from_str(tok).map_err(|_| Error::Parse(format!("bad coefficient `{tok}`")))?;
                    coef *= c;
                    seen_coef = true;
                }
            }
            p.add_term(exps, coef);
        }
        Ok(p)
    }

    /// Canonical representative modulo `|X|^2 = x_1^2 + ... + x_n^2`, with
    /// `n = nvars`, obtained by rewriting `x_n^2 -> -(x_1^2 + ... + x_{n-1}^2)`
    /// until every monomial has degree at most one in `x_n`.
    pub fn reduce_mod_norm(&self) -> Result<Poly> {
        let n = self.nvars;
        if n < 3 {
            return Err(Error::Unsupported(format!("reduction modulo |X|^2 needs at least 3 variables, got {n}")));
        }
        let minus_s = -Poly::norm_sq(n - 1).with_nvars(n);
        let mut powers: Vec<Poly> = vec![Poly::constant(n, rat(1))];
        let mut out = Poly::zero_in(n);
        for (e, c) in &self.terms {
            let en = e.get(n - 1).copied().unwrap_or(0);
            let (q, r) = ((en / 2) as usize, en % 2);
            while powers.len() <= q {
                let next = powers.last().expect("nonempty").clone() * minus_s.clone();
                powers.push(next);
            }
            let mut rest = e.clone();
            if rest.len() >= n {
                rest[n - 1] = r;
            }
            let mut mono = Poly::zero_in(n);
            mono.add_term(rest, c.clone());
            out = out + mono * powers[q].clone();
        }
        Ok(out.with_nvars(n))
    }

    /// Whether `|X|^2` divides the polynomial.
    pub fn divisible_by_norm(&self) -> Result<bool> {
        Ok(self.reduce_mod_norm()?.is_zero())
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, " x{}", i + 1)?,
                    _ => write!(f, " x{}^{k}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        self.nvars = self.nvars.max(rhs.nvars);
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

macro_rules! ref_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for &Poly {
            type Output = Poly;

            fn $f(self, rhs: &Poly) -> Poly {
                self.clone().$f(rhs.clone())
            }
        }
    };
}

ref_binop!(Add, add);
ref_binop!(Sub, sub);

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero_in(self.nvars.max(rhs.nvars));
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(mul_monomials(a, b), x * y);
            }
        }
        out
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero_in(0)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(0, rat(1))
    }
}
