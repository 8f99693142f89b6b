//! Browser bindings. Every export takes plain strings and numbers and returns
//! a JSON string; errors surface as JS exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use osserman_core::cliffrep::rho7;
use osserman_core::cliffstruct::{build_cliff, CliffordStructure};
use osserman_core::curvature::jacobi_spectrum;
use osserman_core::numkit::{gaussian_vector, random_orthogonal, rng_from_seed, unit_vector, vecops};
use osserman_core::octonion::Octonion;
use osserman_core::scalar::Rational;
use osserman_core::symcheck::{bianchi_residual, ConnectionModel, DerivativeField};

fn numbers(text: &str, len: usize, what: &str) -> Result<Vec<f64>, String> {
    let v = text
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| format!("{what}: cannot read {s:?} as a number")))
        .collect::<Result<Vec<_>, _>>()?;
    if len > 0 && v.len() != len {
        return Err(format!("{what}: expected {len} numbers, got {}", v.len()));
    }
    Ok(v)
}

fn rationals(text: &str, what: &str) -> Result<Octonion<Rational>, String> {
    let v = text
        .split(',')
        .map(|s| s.trim().parse::<Rational>().map_err(|_| format!("{what}: cannot read {s:?} as a fraction")))
        .collect::<Result<Vec<_>, _>>()?;
    Octonion::from_slice(&v).map_err(|e| format!("{what}: {e}"))
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
pub struct Sweep {
    pub expected: Vec<(f64, usize)>,
    pub spectra: Vec<Vec<(f64, usize)>>,
    pub max_deviation: f64,
}

/// Jacobi spectra of a Clifford structure on `R^8` at `count` seeded unit
/// vectors. `mu` holds one value per operator, so its length fixes `nu`.
pub fn sweep(lambda0: f64, mu: &str, seed: u64, count: usize) -> Result<Sweep, String> {
    let mu = numbers(mu, 0, "mu")?;
    if mu.len() > 7 {
        return Err("at most 7 values of mu".into());
    }
    let mut rng = rng_from_seed(seed);
    let t = random_orthogonal(8, &mut rng);
    let cs =
        CliffordStructure::new(rho7(1).sub_family(mu.len()).conjugate(&t), lambda0, mu).map_err(|e| e.to_string())?;
    let r = build_cliff(&cs).map_err(|e| e.to_string())?;
    let expected = cs.expected_spectrum();
    let mut spectra = Vec::new();
    let mut max_deviation = 0.0_f64;
    for _ in 0..count.clamp(1, 200) {
        let x = unit_vector(8, &mut rng);
        let s = jacobi_spectrum(&r, &x, 1e-8).map_err(|e| e.to_string())?.pattern();
        for ((a, _), (b, _)) in s.iter().zip(&expected) {
            max_deviation = max_deviation.max((a - b).abs());
        }
        if s.len() != expected.len() {
            max_deviation = f64::INFINITY;
        }
        spectra.push(s);
    }
    Ok(Sweep { expected, spectra, max_deviation })
}

#[derive(Serialize)]
pub struct Residuals {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub symmetric_residual: f64,
    pub relative: f64,
    pub bianchi_residual: f64,
}

/// `|(nabla_X R)(X,Y)X|` for the connection model with the given `m`
/// (eight fractions) and eigenvalues (seven numbers) at seeded `X, Y, U`,
/// next to the second Bianchi residual at the same point.
pub fn residuals(m: &str, lambda: &str, seed: u64) -> Result<Residuals, String> {
    let m = rationals(m, "m")?;
    let lambda: [f64; 7] = numbers(lambda, 7, "lambda")?.try_into().expect("length checked");
    let model = ConnectionModel::new(m, lambda).map_err(|e| e.to_string())?;
    let mut rng = rng_from_seed(seed);
    let (x, y, u) = (gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng), gaussian_vector(8, &mut rng));
    let res = vecops::norm(&model.symmetric_residual(&x, &y));
    let relative = res / model.residual_scale(&x, &y);
    let bianchi = bianchi_residual(&DerivativeField::from(&model), &u, &x, &y);
    Ok(Residuals { x, y, symmetric_residual: res, relative, bianchi_residual: bianchi })
}

/// Exact octonion product of two comma separated coefficient lists.
pub fn product(a: &str, b: &str) -> Result<Vec<String>, String> {
    let p = &rationals(a, "a")? * &rationals(b, "b")?;
    Ok(p.coeffs().iter().map(|c| c.to_string()).collect())
}

#[wasm_bindgen]
pub fn spectrum_sweep(lambda0: f64, mu: &str, seed: u32, count: u32) -> Result<String, JsError> {
    sweep(lambda0, mu, u64::from(seed), count as usize).and_then(|s| to_json(&s)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn flagship_residual(m: &str, lambda: &str, seed: u32) -> Result<String, JsError> {
    residuals(m, lambda, u64::from(seed)).and_then(|r| to_json(&r)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn octonion_product(a: &str, b: &str) -> Result<String, JsError> {
    product(a, b).and_then(|p| to_json(&p)).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_is_constant() {
        let s = sweep(1.0, "2, 3.5", 4, 20).unwrap();
        assert_eq!(s.expected, vec![(1.0, 5), (2.0, 1), (3.5, 1)]);
        assert!(s.max_deviation < 1e-9);
        assert!(sweep(1.0, "1", 0, 1).is_err());
    }

    #[test]
    fn flagship_vanishes() {
        let r = residuals("1,0,-2,1/2,0,0,3,1", "1,2,3,4,5,6,7", 3).unwrap();
        assert!(r.relative < 1e-9);
        assert!(residuals("1,0", "1,2,3,4,5,6,7", 3).is_err());
    }

    #[test]
    fn products() {
        assert_eq!(product("0,1,0,0,0,0,0,0", "0,0,1,0,0,0,0,0").unwrap()[3], "1");
        assert_eq!(product("0,1,0,0,0,0,0,0", "0,1,0,0,0,0,0,0").unwrap()[0], "-1");
        assert!(product("x", "1").is_err());
    }
}
