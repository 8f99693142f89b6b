//! JSON and text formats for tensors, structures, families and models.
//!
//! * tensor: `{"dim": n, "components": [[i, j, k, l, value], ...]}`, 0-based,
//!   symmetry-completed on load;
//! * Clifford structure: `{"lambda0": x, "mu": [...], "J": [matrix, ...]}`;
//! * connection model: `{"m": ["p/q", ...8], "lambda": [...7]}`;
//! * operator family: `[matrix, ...]`, each matrix a list of rows.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cliffrep::OperatorFamily;
use crate::cliffstruct::CliffordStructure;
use crate::curvature::AlgebraicCurvatureTensor;
use crate::error::{Error, Result};
use crate::numkit::DenseMatrix;
use crate::octonion::Octonion;
use crate::scalar::Rational;
use crate::symcheck::ConnectionModel;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorJson {
    pub dim: usize,
    pub components: Vec<(usize, usize, usize, usize, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureJson {
    pub lambda0: f64,
    pub mu: Vec<f64>,
    #[serde(rename = "J")]
    pub j: Vec<DenseMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConnectionJson {
    pub m: Vec<String>,
    pub lambda: Vec<f64>,
}

/// Components with `i < j`, `k < l` and `(i, j) <= (k, l)`; the rest follow
/// by symmetry.
pub fn tensor_to_json(r: &AlgebraicCurvatureTensor) -> TensorJson {
    let components =
        r.nonzero_components().into_iter().filter(|&(i, j, k, l, _)| i < j && k < l && (i, j) <= (k, l)).collect();
    TensorJson { dim: r.dim(), components }
}

pub fn tensor_from_json(t: &TensorJson) -> Result<AlgebraicCurvatureTensor> {
    AlgebraicCurvatureTensor::from_generators(t.dim, &t.components)
}

pub fn family_from_matrices(j: Vec<DenseMatrix>) -> Result<OperatorFamily> {
    let dim = j.first().map(|m| m.rows()).ok_or_else(|| Error::validation("empty family needs a dimension"))?;
    OperatorFamily::new(dim, j)
}

pub fn structure_to_json(cs: &CliffordStructure) -> StructureJson {
    StructureJson { lambda0: cs.lambda0(), mu: cs.mu().to_vec(), j: cs.family().ops().to_vec() }
}

/// An empty `J` list is read as the constant-curvature structure in
/// dimension eight.
pub fn structure_from_json(s: &StructureJson) -> Result<CliffordStructure> {
    let family = if s.j.is_empty() { OperatorFamily::new(8, Vec::new())? } else { family_from_matrices(s.j.clone())? };
    CliffordStructure::new(family, s.lambda0, s.mu.clone())
}

pub fn connection_to_json(model: &ConnectionModel) -> ConnectionJson {
    ConnectionJson { m: model.m().coeffs().iter().map(|c| c.to_string()).collect(), lambda: model.lambda().to_vec() }
}

pub fn connection_from_json(c: &ConnectionJson) -> Result<ConnectionModel> {
    if c.m.len() != 8 || c.lambda.len() != 7 {
        return Err(Error::validation("connection model needs 8 coefficients of m and 7 eigenvalues"));
    }
    let coeffs =
        c.m.iter()
            .map(|s| Rational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
    let m = Octonion::from_slice(&coeffs)?;
    let lambda: [f64; 7] = c.lambda.clone().try_into().expect("length checked");
    ConnectionModel::new(m, lambda)
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = to_json_string(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_tensor(path: &Path) -> Result<AlgebraicCurvatureTensor> {
    tensor_from_json(&read_json(path)?)
}

pub fn read_structure(path: &Path) -> Result<CliffordStructure> {
    structure_from_json(&read_json(path)?)
}

pub fn read_connection(path: &Path) -> Result<ConnectionModel> {
    connection_from_json(&read_json(path)?)
}

pub fn read_family(path: &Path) -> Result<OperatorFamily> {
    family_from_matrices(read_json(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffrep::rho7;
    use crate::cliffstruct::{build_cliff, case_b_structure};
    use crate::curvature::CurvatureTensor;
    use crate::scalar::rat_frac;

    #[test]
    fn tensor_round_trip() {
        let cs = case_b_structure(1.0, [2.0, 3.0, 4.0]).unwrap();
        let r = build_cliff(&cs).unwrap();
        let text = to_json_string(&tensor_to_json(&r)).unwrap();
        let back = tensor_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert!(back.distance(&r) < 1e-15);
    }

    #[test]
    fn tensor_generator_completion() {
        // R(X,Y)Z = <X,Z>Y - <Y,Z>X gives R_0110 = -1
        let t: TensorJson = serde_json::from_str(r#"{"dim": 2, "components": [[0, 1, 1, 0, -1.0]]}"#).unwrap();
        let r = tensor_from_json(&t).unwrap();
        assert_eq!(*r.get(1, 0, 0, 1), -1.0);
        assert_eq!(*r.get(0, 1, 0, 1), 1.0);
        assert!(r.distance(&CurvatureTensor::constant(2, 1.0)) == 0.0);
        let bad: TensorJson =
            serde_json::from_str(r#"{"dim": 2, "components": [[0, 1, 1, 0, -1.0], [1, 0, 0, 1, 2.0]]}"#).unwrap();
        assert!(tensor_from_json(&bad).is_err());
    }

    #[test]
    fn structure_round_trip() {
        let cs = CliffordStructure::new(rho7(1).sub_family(2), 0.5, vec![2.0, -1.0]).unwrap();
        let text = to_json_string(&structure_to_json(&cs)).unwrap();
        assert!(text.contains("\"J\""));
        let back = structure_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, cs);
    }

    #[test]
    fn connection_round_trip() {
        let m = Octonion::new(std::array::from_fn(|i| rat_frac(i as i64 - 3, 2)));
        let model = ConnectionModel::new(m, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]).unwrap();
        let json = connection_to_json(&model);
        assert_eq!(json.m[0], "-3/2");
        let back = connection_from_json(&json).unwrap();
        assert_eq!(back.m(), model.m());
        let bad = ConnectionJson { m: vec!["x".into(); 8], lambda: vec![0.0; 7] };
        assert!(matches!(connection_from_json(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn family_json_is_list_of_row_matrices() {
        let f = rho7(1).sub_family(1);
        let text = serde_json::to_string(f.ops()).unwrap();
        assert!(text.starts_with("[[["));
        let back = family_from_matrices(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.ops(), f.ops());
    }
}
