//! Seeded verification suites, JSON reports and fixture generation.
//!
//! Every check draws its randomness from `rng_from_seed(stream_seed(seed,
//! name))`, where `stream_seed` XORs the run seed with the 64-bit FNV-1a hash
//! of the check name. Records are sorted by name, so reports do not depend
//! on execution order.

use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cliffrep::{product_sign, psi_reconstruct, rho7, validate_family, ProductSign, FAMILY_TOL};
use crate::cliffstruct::{
    build_cliff, build_cliff_exact, case_b_structure, compare_eigenspaces, exact_family, jacobi_closed, peel_simple,
    random_structure, seven_expand_residual, shift_constant, spectrum_of_values, CliffordStructure,
};
use crate::curvature::{
    const_curv, einstein_check, jacobi_spectrum, map_maybe_parallel, osserman_test, AlgebraicCurvatureTensor,
    CurvatureTensor,
};
use crate::error::{Error, Result};
use crate::io;
use crate::numkit::{gaussian_vector, random_orthogonal, rng_from_seed, unit_vector, vecops, DenseMatrix, SampleRng};
use crate::octonion::{
    identity_suite, jspace, lemma_generator, lspace, random_integer_octonion, validate_table, Bioctonion,
    MultiplicationTable, Octonion,
};
use crate::polyjacobi::{eigenprojection_w, gram_residuals, PolyGramSystem};
use crate::scalar::{rat, Rational};
use crate::symcheck::{
    bianchi_residual, finite_difference_check, lemma_oct_defect, lemma_oct_quadratic_forms, random_model,
    DerivativeField, FD_STEP, FD_TOL, NABLA_TOL,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SUITE_NAMES: [&str; 6] = ["octonion", "cliffrep", "curvature", "cliffstruct", "polyjacobi", "symcheck"];
/// Connection models sampled by the flagship check.
pub const FLAGSHIP_MODELS: usize = 20;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// `seed ^ fnv1a64(name)`.
pub fn stream_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    seed ^ h
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub suites: Vec<String>,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 100,
            tol: 1e-9,
            suites: SUITE_NAMES.iter().map(|s| s.to_string()).collect(),
            timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::validation("samples must be at least 1"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::validation("tol must be positive"));
        }
        if let Some(bad) = self.suites.iter().find(|s| !SUITE_NAMES.contains(&s.as_str())) {
            return Err(Error::validation(format!(
                "unknown suite {bad:?}; expected one of {}",
                SUITE_NAMES.join(", ")
            )));
        }
        Ok(())
    }

    fn rng(&self, name: &str) -> SampleRng {
        rng_from_seed(stream_seed(self.seed, name))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<f64>,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub config: SuiteConfig,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(config: SuiteConfig, mut records: Vec<CheckRecord>) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = records.iter().filter(|r| r.passed()).count();
        let failed = records.len() - passed;
        let status = if failed == 0 { Status::Pass } else { Status::Fail };
        Self {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_string(),
            config,
            records,
            summary: Summary { passed, failed, status },
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.status == Status::Pass
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        io::to_json_string(self)
    }

    /// One line per record plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = if r.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {:<36} max residual {:.3e}", r.name, r.max_residual));
            if let Some(ms) = r.elapsed_ms {
                out.push_str(&format!("  ({ms:.1} ms)"));
            }
            if let Some(d) = &r.detail {
                out.push_str(&format!("  {d}"));
            }
            out.push('\n');
        }
        out.push_str(&format!("{} passed, {} failed\n", self.summary.passed, self.summary.failed));
        out
    }
}

/// Concatenates reports with the same schema version. Later records replace
/// earlier ones with the same name; the merged config lists the union of
/// suites and keeps the first report's seed, samples and tolerance.
pub fn merge_reports(reports: &[SuiteReport]) -> Result<SuiteReport> {
    let first = reports.first().ok_or_else(|| Error::validation("nothing to merge"))?;
    let mut config = first.config.clone();
    let mut records: Vec<CheckRecord> = Vec::new();
    for r in reports {
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::validation(format!(
                "schema version {} cannot be merged with {SCHEMA_VERSION}",
                r.schema_version
            )));
        }
        for s in &r.config.suites {
            if !config.suites.contains(s) {
                config.suites.push(s.clone());
            }
        }
        for rec in &r.records {
            records.retain(|x| x.name != rec.name);
            records.push(rec.clone());
        }
    }
    Ok(SuiteReport::new(config, records))
}

/// Result of a single check before naming and timing.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    pub max_residual: f64,
    pub witness: Option<Vec<f64>>,
    pub detail: Option<String>,
}

impl Outcome {
    fn below(residual: f64, tol: f64) -> Self {
        Self { pass: residual < tol, max_residual: residual, witness: None, detail: None }
    }

    fn exact(ok: bool) -> Self {
        Self { pass: ok, max_residual: if ok { 0.0 } else { 1.0 }, witness: None, detail: None }
    }

    fn with_witness(mut self, w: Option<Vec<f64>>) -> Self {
        if !self.pass {
            self.witness = w;
        }
        self
    }

    fn with_detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    fn error(e: Error) -> Self {
        Self { pass: false, max_residual: f64::INFINITY, witness: None, detail: Some(e.to_string()) }
    }
}

/// Largest value and the input that produced it.
#[derive(Debug, Clone, Default)]
struct Worst {
    value: f64,
    input: Option<Vec<f64>>,
}

impl Worst {
    fn push(&mut self, value: f64, input: impl FnOnce() -> Vec<f64>) {
        if value > self.value || value.is_nan() {
            self.value = value;
            self.input = Some(input());
        }
    }
}

type CheckFn = fn(&SuiteConfig, &mut SampleRng) -> Result<Outcome>;

fn checks(suite: &str) -> Vec<(&'static str, CheckFn)> {
    match suite {
        "octonion" => vec![
            ("octonion.identities", check_octonion_identities as CheckFn),
            ("octonion.table", check_table),
            ("octonion.corrupted_table_rejected", check_corrupted_table),
            ("octonion.zero_divisor", check_zero_divisor),
            ("octonion.isotropic_spans", check_isotropic_spans),
        ],
        "cliffrep" => vec![("cliffrep.rho7", check_rho7 as CheckFn), ("cliffrep.psi_round_trip", check_psi)],
        "curvature" => vec![
            ("curvature.tensor_symmetries", check_tensor_symmetries as CheckFn),
            ("curvature.jacobi_operator", check_jacobi_operator),
            ("curvature.osserman_clifford", check_osserman_clifford),
            ("curvature.block_tensor_rejected", check_block_rejected),
            ("curvature.einstein", check_einstein),
        ],
        "cliffstruct" => vec![
            ("cliffstruct.closed_form", check_closed_form as CheckFn),
            ("cliffstruct.eigenspaces", check_eigenspaces),
            ("cliffstruct.constant_shift", check_shift),
            ("cliffstruct.peel", check_peel),
            ("cliffstruct.seven_expansion", check_seven_expansion),
            ("cliffstruct.case_b", check_case_b),
        ],
        "polyjacobi" => vec![
            ("polyjacobi.gram_identities", check_gram as CheckFn),
            ("polyjacobi.w_projection", check_w_projection),
            ("polyjacobi.divisibility", check_divisibility),
        ],
        "symcheck" => vec![
            ("symcheck.flagship", check_flagship as CheckFn),
            ("symcheck.model_bianchi", check_model_bianchi),
            ("symcheck.nabla_relations", check_nabla_relations),
            ("symcheck.b_antisymmetry", check_b_antisymmetry),
            ("symcheck.lemma_identity", check_lemma),
            ("symcheck.finite_difference", check_finite_difference),
            ("symcheck.converse_detector", check_converse),
        ],
        _ => Vec::new(),
    }
}

/// Runs the configured suites. Checks run concurrently when the `parallel`
/// feature is on; the report is identical either way.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut todo: Vec<(&'static str, CheckFn)> = Vec::new();
    for s in SUITE_NAMES.iter().filter(|s| cfg.suites.iter().any(|c| c == *s)) {
        todo.extend(checks(s));
    }
    let records = map_maybe_parallel(&todo, |&(name, f)| {
        let start = Instant::now();
        let mut rng = cfg.rng(name);
        let o = f(cfg, &mut rng).unwrap_or_else(Outcome::error);
        CheckRecord {
            name: name.to_string(),
            status: if o.pass { Status::Pass } else { Status::Fail },
            max_residual: o.max_residual,
            witness: o.witness,
            detail: o.detail,
            elapsed_ms: cfg.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
        }
    });
    Ok(SuiteReport::new(cfg.clone(), records))
}

// ---------------------------------------------------------------- octonion

fn check_octonion_identities(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    for _ in 0..cfg.samples {
        let a = random_integer_octonion(rng, 5);
        let b = random_integer_octonion(rng, 5);
        let c = random_integer_octonion(rng, 5);
        let rep = identity_suite(&a, &b, &c);
        if !rep.all_pass() {
            return Ok(Outcome::exact(false).with_detail(format!("{:?} failed for {}", rep.failures(), rep.inputs)));
        }
    }
    Ok(Outcome::exact(true).with_detail(format!("{} triples, exact", cfg.samples)))
}

fn check_table(_: &SuiteConfig, _: &mut SampleRng) -> Result<Outcome> {
    let v = validate_table(MultiplicationTable::canonical());
    Ok(Outcome::exact(v.passed()))
}

fn check_corrupted_table(_: &SuiteConfig, _: &mut SampleRng) -> Result<Outcome> {
    let bad = MultiplicationTable::canonical().with_line_flipped(3)?;
    let v = validate_table(&bad);
    Ok(Outcome::exact(!v.passed()).with_detail(format!("{} violations", v.violations.len())))
}

type ExactComplex = Complex<Rational>;

fn cx(re: i64, im: i64) -> ExactComplex {
    Complex::new(rat(re), rat(im))
}

fn bioct_exact(pairs: &[(usize, ExactComplex)]) -> Octonion<ExactComplex> {
    let mut v: [ExactComplex; 8] = std::array::from_fn(|_| cx(0, 0));
    for (i, z) in pairs {
        v[*i] = z.clone();
    }
    Octonion::new(v)
}

fn bioct_f64(pairs: &[(usize, (f64, f64))]) -> Bioctonion {
    let mut v = [num_complex::Complex64::new(0.0, 0.0); 8];
    for &(i, (re, im)) in pairs {
        v[i] = num_complex::Complex64::new(re, im);
    }
    Octonion::new(v)
}

fn check_zero_divisor(_: &SuiteConfig, _: &mut SampleRng) -> Result<Outcome> {
    let p = bioct_exact(&[(0, cx(0, 1)), (1, cx(1, 0))]);
    let q = bioct_exact(&[(0, cx(0, 1)), (1, cx(-1, 0))]);
    Ok(Outcome::exact((&p * &q).is_zero()))
}

/// The three generator values of `L(i 1 + e_1)` for integer eigenvalues,
/// checked exactly, and the dimensions of the spans.
pub fn isotropic_span_values(lambda: [i64; 7]) -> Result<(bool, usize, usize)> {
    let lam: [ExactComplex; 7] = lambda.map(|l| cx(l, 0));
    let (l4, l5, l6, l7) = (cx(lambda[3], 0), cx(lambda[4], 0), cx(lambda[5], 0), cx(lambda[6], 0));
    let table = MultiplicationTable::canonical();
    let x23 = bioct_exact(&[(2, cx(0, 1)), (3, cx(1, 0))]);
    let x45 = bioct_exact(&[(4, cx(0, 1)), (5, cx(1, 0))]);
    let u67 = bioct_exact(&[(6, cx(0, 1)), (7, cx(-1, 0))]);
    let two = cx(2, 0);
    let v1 = lemma_generator(table, &lam, &x23, &u67)
        == bioct_exact(&[(6, cx(0, 1)), (7, cx(1, 0))]).scale(&(-(two.clone() * (l4 - l5))));
    let v2 = lemma_generator(table, &lam, &x23, &x45)
        == bioct_exact(&[(4, cx(0, -1)), (5, cx(1, 0))]).scale(&(two.clone() * (l6.clone() - l7.clone())));
    let v3 = lemma_generator(table, &lam, &x45, &x23)
        == bioct_exact(&[(2, cx(0, 1)), (3, cx(-1, 0))]).scale(&(-(two * (l6 - l7))));
    let y = bioct_f64(&[(0, (0.0, 1.0)), (1, (1.0, 0.0))]);
    let j = jspace(&y)?.len();
    let l = lspace(&y, &lambda.map(|v| v as f64))?.len();
    Ok((v1 && v2 && v3, j, l))
}

fn check_isotropic_spans(_: &SuiteConfig, _: &mut SampleRng) -> Result<Outcome> {
    let (values, j, l) = isotropic_span_values([2, 3, 5, 7, 11, 13, 17])?;
    Ok(Outcome::exact(values && j == 4 && l == 7).with_detail(format!("dim J = {j}, dim L = {l}")))
}

// ---------------------------------------------------------------- cliffrep

fn check_rho7(_: &SuiteConfig, _: &mut SampleRng) -> Result<Outcome> {
    let plus = rho7(1);
    let minus = rho7(-1);
    let v = validate_family(&plus, FAMILY_TOL);
    let ok = v.pass && product_sign(&plus)? == ProductSign::Plus && product_sign(&minus)? == ProductSign::Minus;
    Ok(Outcome { pass: ok, max_residual: v.max_residual(), witness: None, detail: None })
}

fn check_psi(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for _ in 0..cfg.samples.min(50) {
        let t = random_orthogonal(8, rng);
        let rec = psi_reconstruct(&rho7(1).conjugate(&t))?;
        worst = worst.max(rec.intertwining_residual);
    }
    Ok(Outcome::below(worst, cfg.tol))
}

// --------------------------------------------------------------- curvature

fn structures(count: usize, rng: &mut SampleRng) -> Result<Vec<CliffordStructure>> {
    (0..count).map(|i| random_structure(i % 8, rng)).collect()
}

fn check_tensor_symmetries(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for cs in structures(16, rng)? {
        worst = worst.max(build_cliff(&cs)?.residual().max());
    }
    for _ in 0..4 {
        worst = worst.max(random_tensor(8, 3, rng).residual().max());
    }
    Ok(Outcome::below(worst, cfg.tol.min(1e-12)))
}

fn check_jacobi_operator(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let tensors: Vec<AlgebraicCurvatureTensor> = structures(8, rng)?.iter().map(build_cliff).collect::<Result<_>>()?;
    let mut worst = Worst::default();
    for i in 0..cfg.samples {
        let r = &tensors[i % tensors.len()];
        let x = gaussian_vector(8, rng);
        let rx = r.jacobi(&x)?;
        let scale = r.max_abs().max(1.0) * vecops::dot(&x, &x);
        let res = (rx.symmetry_residual() + vecops::norm(&rx.matvec(&x))) / scale;
        worst.push(res, || x.clone());
    }
    Ok(Outcome::below(worst.value, cfg.tol).with_witness(worst.input))
}

fn check_osserman_clifford(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for cs in structures(8, rng)? {
        let r = build_cliff(&cs)?;
        let v = osserman_test(&r, cfg.samples, rng.random(), cfg.tol)?;
        let expected = cs.expected_spectrum();
        if !v.is_osserman || !v.reference_spectrum.matches(&expected, 1e-9) {
            return Ok(Outcome {
                pass: false,
                max_residual: v.max_deviation,
                witness: v.witness,
                detail: Some(format!("nu = {}, expected {expected:?}", cs.nu())),
            });
        }
        worst = worst.max(v.max_deviation);
    }
    Ok(Outcome::below(worst, cfg.tol))
}

/// Constant curvature 1 on the first four coordinates of `R^8`, flat elsewhere.
pub fn block_tensor() -> AlgebraicCurvatureTensor {
    CurvatureTensor::block_constant(8, 4, 1.0)
}

fn check_block_rejected(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let v = osserman_test(&block_tensor(), cfg.samples, rng.random(), cfg.tol)?;
    let ok = !v.is_osserman && v.witness.is_some();
    Ok(Outcome::exact(ok).with_detail(format!("spectral deviation {:.3e}", v.max_deviation)))
}

fn check_einstein(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let space_form = einstein_check(&const_curv(8, 1.0)?);
    let ricci_ok = space_form.ricci.distance(&DenseMatrix::identity(8).scale(&7.0)) < cfg.tol;
    let block = einstein_check(&block_tensor());
    let mut worst = space_form.deviation;
    for cs in structures(4, rng)? {
        worst = worst.max(einstein_check(&build_cliff(&cs)?).deviation);
    }
    let ok = ricci_ok && space_form.is_einstein && !block.is_einstein && worst < cfg.tol;
    Ok(Outcome { pass: ok, max_residual: worst, witness: None, detail: None })
}

// ------------------------------------------------------------- cliffstruct

fn check_closed_form(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let cs_list = structures(8, rng)?;
    let tensors: Vec<_> = cs_list.iter().map(build_cliff).collect::<Result<_>>()?;
    let mut worst = Worst::default();
    for i in 0..cfg.samples {
        let (cs, r) = (&cs_list[i % 8], &tensors[i % 8]);
        let x = gaussian_vector(8, rng);
        let y = gaussian_vector(8, rng);
        let d = vecops::norm(&vecops::sub(&r.jacobi(&x)?.matvec(&y), &jacobi_closed(cs, &x, &y)));
        worst.push(d, || [x.clone(), y.clone()].concat());
    }
    Ok(Outcome::below(worst.value, cfg.tol).with_witness(worst.input))
}

fn check_eigenspaces(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = Worst::default();
    for cs in structures(8, rng)? {
        let r = build_cliff(&cs)?;
        for _ in 0..cfg.samples.div_ceil(8) {
            let x = unit_vector(8, rng);
            let c = compare_eigenspaces(&cs, &r, &x)?;
            worst.push(c.max_subspace_distance, || x.clone());
        }
    }
    Ok(Outcome::below(worst.value, cfg.tol).with_witness(worst.input))
}

fn check_shift(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for cs in structures(8, rng)? {
        let r = build_cliff(&cs)?;
        let shifted = shift_constant(&r, -cs.lambda0());
        let mut values = vec![0.0; 7 - cs.nu()];
        values.extend(cs.mu().iter().map(|m| m - cs.lambda0()));
        let expected = spectrum_of_values(&values).pattern();
        let x = unit_vector(8, rng);
        let s = jacobi_spectrum(&shifted, &x, 1e-8)?;
        if !s.matches(&expected, cfg.tol) {
            return Ok(Outcome::exact(false).with_detail(format!("expected {expected:?}, got {:?}", s.pattern())));
        }
        worst = worst.max(shift_constant(&shifted, cs.lambda0()).distance(&r));
    }
    Ok(Outcome::below(worst, cfg.tol))
}

/// `lambda0 = 0`, `J_1` with eigenvalue `lambda1`, `J_2, J_3, J_4` sharing
/// `lambda2`: the multiplicity pattern `3, 1, 3` on `X^perp`.
pub fn peel_fixture(lambda1: f64, lambda2: f64) -> Result<CliffordStructure> {
    CliffordStructure::new(rho7(1).sub_family(4), 0.0, vec![lambda1, lambda2, lambda2, lambda2])
}

fn check_peel(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let cs = peel_fixture(2.0, 5.0)?;
    let r = build_cliff(&cs)?;
    let peeled = peel_simple(&r, cs.family().op(0), 2.0, rng.random())?;
    let v = osserman_test(&peeled, cfg.samples, rng.random(), cfg.tol)?;
    let ok = v.is_osserman && v.reference_spectrum.matches(&[(0.0, 4), (5.0, 3)], cfg.tol);
    Ok(Outcome { pass: ok, max_residual: v.max_deviation, witness: v.witness, detail: None })
}

fn check_seven_expansion(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let f = rho7(1);
    let mut worst = Worst::default();
    for _ in 0..cfg.samples {
        let (x, y, z) = (gaussian_vector(8, rng), gaussian_vector(8, rng), gaussian_vector(8, rng));
        let r = vecops::norm(&seven_expand_residual(&f, &x, &y, &z)?);
        worst.push(r, || [x.clone(), y.clone(), z.clone()].concat());
    }
    Ok(Outcome::below(worst.value, cfg.tol).with_witness(worst.input))
}

fn check_case_b(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let cs = case_b_structure(1.0, [2.0, 3.0, 4.0])?;
    let f = cs.family();
    let prod = (f.op(0) * f.op(1)).distance(f.op(2));
    let v = osserman_test(&build_cliff(&cs)?, cfg.samples, rng.random(), cfg.tol)?;
    let ok = prod == 0.0
        && v.is_osserman
        && v.reference_spectrum.matches(&[(1.0, 4), (2.0, 1), (3.0, 1), (4.0, 1)], cfg.tol);
    Ok(Outcome { pass: ok, max_residual: v.max_deviation.max(prod), witness: v.witness, detail: None })
}

// -------------------------------------------------------------- polyjacobi

fn check_gram(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let ops = exact_family(&rho7(1))?;
    let mut worst = 0.0_f64;
    for nu in 1..=7 {
        let mu: Vec<Rational> = (0..nu).map(|_| rat(rng.random_range(1..=9))).collect();
        let r = build_cliff_exact(&ops[..nu], 8, &rat(0), &mu);
        let sys = PolyGramSystem::from_linear_family(&ops[..nu], &mu)?;
        let rep = gram_residuals(&sys, &r, &[1, 2, 3], cfg.samples.min(20), rng.random())?;
        if !rep.pass(cfg.tol) {
            return Ok(Outcome::exact(false).with_detail(format!("nu = {nu}: {rep:?}")));
        }
        worst = rep.power_residuals.iter().fold(worst, |m, (_, v)| m.max(*v));
    }
    Ok(Outcome::below(worst, cfg.tol).with_detail("symbolic for k = 1, sampled for k = 2, 3"))
}

fn check_w_projection(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    // spectrum {0, 2, 5} after shifting lambda0 = 1 away
    let cs = CliffordStructure::new(rho7(1).sub_family(3), 1.0, vec![3.0, 3.0, 6.0])?;
    let r = shift_constant(&build_cliff(&cs)?, -1.0);
    let spectrum = [0.0, 2.0, 5.0];
    let k = spectrum.len() as i32;
    let mut worst = Worst::default();
    for _ in 0..cfg.samples.min(50) {
        let x = gaussian_vector(8, rng);
        let n2 = vecops::dot(&x, &x);
        for (target, mult) in [(1, 2.0), (2, 1.0)] {
            let w = eigenprojection_w(&r, &spectrum, target, &x)?;
            let f = n2.powi(k - 1);
            let sq = (&w * &w).distance(&w.scale(&f)) / f.powi(2);
            let tr = (w.trace() / f - mult).abs();
            worst.push(sq.max(tr), || x.clone());
        }
    }
    Ok(Outcome::below(worst.value, cfg.tol).with_witness(worst.input))
}

fn check_divisibility(_: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let a = random_integer_octonion(rng, 3);
    let b = random_integer_octonion(rng, 3);
    let p = random_integer_octonion(rng, 3);
    for k in 1..8 {
        let q = lemma_oct_quadratic_forms(&a, &b, &p, k)?;
        let sum = &(&q.c * &q.c) + &(&q.d * &q.d);
        let ok = q.norm_defect().is_zero()
            && sum.divisible_by_norm()?
            && q.c.divisible_by_norm()?
            && q.d.divisible_by_norm()?;
        if !ok {
            return Ok(Outcome::exact(false).with_detail(format!("e = e{k}")));
        }
    }
    Ok(Outcome::exact(true))
}

// ---------------------------------------------------------------- symcheck

fn check_flagship(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = Worst::default();
    for _ in 0..FLAGSHIP_MODELS {
        let model = random_model(rng);
        for _ in 0..cfg.samples {
            let (x, y) = (gaussian_vector(8, rng), gaussian_vector(8, rng));
            let rel = vecops::norm(&model.symmetric_residual(&x, &y)) / model.residual_scale(&x, &y);
            worst.push(rel, || [x.clone(), y.clone()].concat());
        }
    }
    Ok(Outcome::below(worst.value, cfg.tol)
        .with_witness(worst.input)
        .with_detail(format!("{FLAGSHIP_MODELS} models x {} pairs, relative", cfg.samples)))
}

fn check_model_bianchi(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = Worst::default();
    for _ in 0..FLAGSHIP_MODELS {
        let model = random_model(rng);
        let field = DerivativeField::from(&model);
        for _ in 0..cfg.samples {
            let (u, x, y) = (gaussian_vector(8, rng), gaussian_vector(8, rng), gaussian_vector(8, rng));
            let b = bianchi_residual(&field, &u, &x, &y).abs();
            worst.push(b, || [u.clone(), x.clone(), y.clone()].concat());
        }
    }
    Ok(Outcome::below(worst.value, cfg.tol).with_witness(worst.input).with_detail("absolute"))
}

fn check_nabla_relations(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = 0.0_f64;
    for _ in 0..cfg.samples.min(20) {
        let t = DerivativeField::from(&random_model(rng)).tangency_residual();
        worst = worst.max(t.skew).max(t.anticommutation);
    }
    Ok(Outcome::below(worst, cfg.tol.min(NABLA_TOL)))
}

fn check_b_antisymmetry(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    for _ in 0..cfg.samples.min(20) {
        let model = random_model(rng);
        let y = random_integer_octonion(rng, 4);
        for i in 1..8 {
            for j in (1..8).filter(|&j| j != i) {
                let s = model.b_form_exact(i, j, &y)? + model.b_form_exact(j, i, &y)?;
                if !s.is_zero() {
                    return Ok(Outcome::exact(false).with_detail(format!("i = {i}, j = {j}")));
                }
            }
        }
        let a = model.a_map(&random_integer_octonion(rng, 4));
        if !a.re().is_zero() {
            return Ok(Outcome::exact(false).with_detail("A(U) not orthogonal to 1"));
        }
    }
    Ok(Outcome::exact(true))
}

fn check_lemma(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    for _ in 0..cfg.samples {
        let k = rng.random_range(1..8);
        let e = Octonion::basis(k);
        let (a, b, p, y) = (
            random_integer_octonion(rng, 4),
            random_integer_octonion(rng, 4),
            random_integer_octonion(rng, 4),
            random_integer_octonion(rng, 4),
        );
        if !lemma_oct_defect(&a, &b, &p, &e, &y)?.is_zero() {
            return Ok(Outcome::exact(false).with_detail(format!("e = e{k}")));
        }
    }
    Ok(Outcome::exact(true))
}

fn check_finite_difference(cfg: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let mut worst = Worst::default();
    for _ in 0..cfg.samples.min(10) {
        let model = random_model(rng);
        let (w, v, z) = (unit_vector(8, rng), unit_vector(8, rng), unit_vector(8, rng));
        let c = finite_difference_check(&model, &w, &v, &z, FD_STEP)?;
        worst.push(c.max_abs_error.max(c.fit_residual), || [w.clone(), v.clone(), z.clone()].concat());
    }
    Ok(Outcome::below(worst.value, FD_TOL).with_witness(worst.input))
}

fn check_converse(_: &SuiteConfig, rng: &mut SampleRng) -> Result<Outcome> {
    let field = DerivativeField::random_tangent(rho7(1), 0.0, (1..=7).map(f64::from).collect(), 1.0, rng)?;
    let mut best = 0.0_f64;
    for _ in 0..10 {
        let (u, x, y) = (gaussian_vector(8, rng), gaussian_vector(8, rng), gaussian_vector(8, rng));
        best = best.max(bianchi_residual(&field, &u, &x, &y).abs());
    }
    Ok(Outcome { pass: best > 1e-6, max_residual: best, witness: None, detail: Some("largest residual seen".into()) })
}

// ------------------------------------------------------------------ corpus

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    Cliff,
    Tensor,
    Connection,
}

impl std::str::FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cliff" => Ok(Self::Cliff),
            "tensor" => Ok(Self::Tensor),
            "connection" => Ok(Self::Connection),
            _ => Err(Error::validation(format!("unknown corpus kind {s:?}; expected cliff, tensor or connection"))),
        }
    }
}

impl CorpusKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Cliff => "cliff",
            Self::Tensor => "tensor",
            Self::Connection => "connection",
        }
    }
}

/// `sum_t (<S_t X, Z> S_t Y - <S_t Y, Z> S_t X)` for Gaussian symmetric
/// `S_t`: a generic algebraic curvature tensor.
pub fn random_tensor(n: usize, terms: usize, rng: &mut SampleRng) -> AlgebraicCurvatureTensor {
    let mut comp = vec![0.0; n.pow(4)];
    for _ in 0..terms {
        let g = DenseMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(rand_distr::StandardNormal));
        let s = g.symmetrized();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        comp[((i * n + j) * n + k) * n + l] += s[(i, k)] * s[(j, l)] - s[(j, k)] * s[(i, l)];
                    }
                }
            }
        }
    }
    CurvatureTensor::from_components(n, comp).expect("valid by construction")
}

/// Writes eight fixtures of the given kind into `dir` and returns their
/// paths. Output is a function of `(kind, seed)` only.
pub fn gen_corpus(kind: CorpusKind, seed: u64, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut rng = rng_from_seed(stream_seed(seed, kind.name()));
    let mut out = Vec::new();
    for i in 0..8 {
        let path = dir.join(format!("{}-{seed}-{i}.json", kind.name()));
        match kind {
            CorpusKind::Cliff => io::write_json(&path, &io::structure_to_json(&random_structure(i, &mut rng)?))?,
            CorpusKind::Tensor => {
                let r = if i % 2 == 0 {
                    build_cliff(&random_structure(i, &mut rng)?)?
                } else {
                    random_tensor(8, 2, &mut rng)
                };
                io::write_json(&path, &io::tensor_to_json(&r))?
            }
            CorpusKind::Connection => io::write_json(&path, &io::connection_to_json(&random_model(&mut rng)))?,
        }
        out.push(path);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suites: &[&str]) -> SuiteConfig {
        SuiteConfig {
            seed: 5,
            samples: 8,
            tol: 1e-9,
            suites: suites.iter().map(|s| s.to_string()).collect(),
            timings: false,
        }
    }

    #[test]
    fn stream_seeds_differ_by_name() {
        assert_ne!(stream_seed(1, "a"), stream_seed(1, "b"));
        assert_eq!(stream_seed(0, ""), 0xcbf2_9ce4_8422_2325);
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        assert!(SuiteConfig { samples: 0, ..SuiteConfig::default() }.validate().is_err());
        assert!(SuiteConfig { tol: 0.0, ..SuiteConfig::default() }.validate().is_err());
        assert!(quick(&["nope"]).validate().is_err());
    }

    #[test]
    fn octonion_suite_passes_and_is_deterministic() {
        let a = run_suite(&quick(&["octonion", "cliffrep"])).unwrap();
        assert!(a.passed(), "{}", a.to_text());
        let b = run_suite(&quick(&["octonion", "cliffrep"])).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        assert!(a.records.windows(2).all(|w| w[0].name < w[1].name));
    }

    #[test]
    fn merge_replaces_and_unions() {
        let a = run_suite(&quick(&["octonion"])).unwrap();
        let b = run_suite(&quick(&["cliffrep"])).unwrap();
        let m = merge_reports(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(m.records.len(), a.records.len() + b.records.len());
        assert_eq!(m.config.suites, vec!["octonion", "cliffrep"]);
        let twice = merge_reports(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(twice.records, a.records);
        assert!(merge_reports(&[]).is_err());
    }

    #[test]
    fn report_round_trips_through_json() {
        let a = run_suite(&quick(&["octonion"])).unwrap();
        let back: SuiteReport = serde_json::from_str(&a.to_json().unwrap()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn random_tensors_are_valid_and_generic() {
        let mut rng = rng_from_seed(3);
        let r = random_tensor(8, 2, &mut rng);
        assert!(r.check().is_ok());
        assert!(!osserman_test(&r, 4, 1, 1e-9).unwrap().is_osserman);
    }

    #[test]
    fn corpus_is_reproducible() {
        let dir = std::env::temp_dir().join(format!("osserman-corpus-{}", std::process::id()));
        let (a, b) = (dir.join("a"), dir.join("b"));
        for kind in [CorpusKind::Cliff, CorpusKind::Tensor, CorpusKind::Connection] {
            let pa = gen_corpus(kind, 3, &a).unwrap();
            let pb = gen_corpus(kind, 3, &b).unwrap();
            for (x, y) in pa.iter().zip(&pb) {
                assert_eq!(std::fs::read(x).unwrap(), std::fs::read(y).unwrap());
            }
        }
        for p in gen_corpus(CorpusKind::Cliff, 3, &a).unwrap() {
            let cs = io::read_structure(&p).unwrap();
            assert!(osserman_test(&build_cliff(&cs).unwrap(), 16, 0, 1e-9).unwrap().is_osserman);
        }
        for p in gen_corpus(CorpusKind::Connection, 3, &a).unwrap() {
            let m = io::read_connection(&p).unwrap();
            let x = gaussian_vector(8, &mut rng_from_seed(1));
            let y = gaussian_vector(8, &mut rng_from_seed(2));
            assert!(vecops::norm(&m.symmetric_residual(&x, &y)) < 1e-9 * m.residual_scale(&x, &y));
        }
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
