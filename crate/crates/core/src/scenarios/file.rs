//! JSON scenario files.
//!
//! Schema (version 1): complex scalars are two-element arrays `[re, im]`,
//! bases are lists of column vectors, matrices are row-major lists of rows,
//! and `observables` maps names to eigenvalue lists in the mid basis.
//! `u1` and `u21` may be omitted and default to the identity.
//!
//! ```json
//! {
//!   "schema": 1,
//!   "dim": 2,
//!   "initial": [[1.0, 0.0], [0.0, 0.0]],
//!   "mid_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
//!   "final_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
//!   "observables": {"pi_1": [1.0, 0.0]}
//! }
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::amplitudes::MeasurementChain;
use crate::error::{Error, Result};
use crate::qcore::{Basis, Observable, StateVector, UnitaryMatrix};
use crate::scalar::Scalar;
use crate::scenarios::Scenario;

/// Supported schema version.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct ScenarioDoc {
    schema: u32,
    #[serde(default)]
    name: Option<String>,
    dim: usize,
    initial: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u1: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    u21: Option<Vec<Vec<[f64; 2]>>>,
    mid_basis: Vec<Vec<[f64; 2]>>,
    final_basis: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    observables: BTreeMap<String, Vec<f64>>,
}

fn component<T: Scalar>(pair: [f64; 2], field: &str) -> Result<Complex<T>> {
    if !(pair[0].is_finite() && pair[1].is_finite()) {
        return Err(Error::invalid_field(field, "non-finite component"));
    }
    Ok(Complex::new(T::of(pair[0]), T::of(pair[1])))
}

fn state<T: Scalar>(raw: &[[f64; 2]], dim: usize, field: &str) -> Result<StateVector<T>> {
    if raw.len() != dim {
        return Err(Error::invalid_field(
            field,
            format!("expected {dim} components, got {}", raw.len()),
        ));
    }
    let components = raw
        .iter()
        .map(|&pair| component(pair, field))
        .collect::<Result<Vec<_>>>()?;
    StateVector::new(components).map_err(|e| Error::invalid_field(field, e.to_string()))
}

fn basis<T: Scalar>(raw: &[Vec<[f64; 2]>], dim: usize, field: &str) -> Result<Basis<T>> {
    if raw.len() != dim {
        return Err(Error::invalid_field(
            field,
            format!("expected {dim} column vectors, got {}", raw.len()),
        ));
    }
    let vectors = raw
        .iter()
        .enumerate()
        .map(|(j, col)| state(col, dim, &format!("{field}[{j}]")))
        .collect::<Result<Vec<_>>>()?;
    Basis::new(vectors).map_err(|e| Error::invalid_field(field, e.to_string()))
}

fn unitary<T: Scalar>(
    raw: &Option<Vec<Vec<[f64; 2]>>>,
    dim: usize,
    field: &str,
) -> Result<Option<UnitaryMatrix<T>>> {
    let Some(rows) = raw else {
        return Ok(None);
    };
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::invalid_field(
            field,
            format!("expected a {dim}x{dim} row-major matrix"),
        ));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for row in rows {
        for &pair in row {
            entries.push(component(pair, field)?);
        }
    }
    UnitaryMatrix::new(dim, entries)
        .map(Some)
        .map_err(|e| Error::invalid_field(field, e.to_string()))
}

/// Parses and validates a scenario document.
pub fn load_scenario_str<T: Scalar>(text: &str) -> Result<Scenario<T>> {
    let doc: ScenarioDoc =
        serde_json::from_str(text).map_err(|e| Error::ScenarioIo(e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::invalid_field(
            "schema",
            format!(
                "unsupported version {}, expected {SCHEMA_VERSION}",
                doc.schema
            ),
        ));
    }
    let dim = doc.dim;
    if dim == 0 || dim > crate::qcore::MAX_DIM {
        return Err(Error::invalid_field("dim", "must lie in 1..=16"));
    }
    let initial = state(&doc.initial, dim, "initial")?;
    let u1 = unitary(&doc.u1, dim, "u1")?;
    let u21 = unitary(&doc.u21, dim, "u21")?;
    let mid_basis: Basis<T> = basis(&doc.mid_basis, dim, "mid_basis")?;
    let final_basis = basis(&doc.final_basis, dim, "final_basis")?;
    let chain = MeasurementChain::new(initial, u1, u21, mid_basis.clone(), final_basis)?;

    let mut observables = BTreeMap::new();
    for (name, eigenvalues) in &doc.observables {
        let field = format!("observables.{name}");
        if eigenvalues.len() != dim {
            return Err(Error::invalid_field(
                &field,
                format!("expected {dim} eigenvalues, got {}", eigenvalues.len()),
            ));
        }
        if eigenvalues.iter().any(|b| !b.is_finite()) {
            return Err(Error::invalid_field(&field, "non-finite eigenvalue"));
        }
        let values = eigenvalues.iter().map(|&b| T::of(b)).collect();
        observables.insert(
            name.clone(),
            Observable::new(mid_basis.clone(), values)
                .map_err(|e| Error::invalid_field(&field, e.to_string()))?,
        );
    }

    Ok(Scenario {
        name: doc.name.unwrap_or_else(|| "file".to_string()),
        chain,
        observables,
    })
}

/// Loads a scenario from a JSON file.
pub fn load_scenario<T: Scalar>(path: &Path) -> Result<Scenario<T>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ScenarioIo(format!("{}: {e}", path.display())))?;
    load_scenario_str(&text)
}

fn pair<T: Scalar>(c: Complex<T>) -> [f64; 2] {
    [
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    ]
}

/// Serializes a scenario to the schema-1 JSON document.
pub fn save_scenario_string<T: Scalar>(scenario: &Scenario<T>) -> Result<String> {
    let chain = &scenario.chain;
    let dim = chain.dim();
    let state_doc =
        |s: &StateVector<T>| -> Vec<[f64; 2]> { s.components().iter().map(|&c| pair(c)).collect() };
    let basis_doc =
        |b: &Basis<T>| -> Vec<Vec<[f64; 2]>> { b.vectors().iter().map(state_doc).collect() };
    let matrix_doc = |u: &UnitaryMatrix<T>| -> Vec<Vec<[f64; 2]>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| pair(u.entry(i, j))).collect())
            .collect()
    };
    let doc = ScenarioDoc {
        schema: SCHEMA_VERSION,
        name: Some(scenario.name.clone()),
        dim,
        initial: state_doc(chain.initial()),
        u1: Some(matrix_doc(chain.u1())),
        u21: Some(matrix_doc(chain.u21())),
        mid_basis: basis_doc(chain.mid_basis()),
        final_basis: basis_doc(chain.final_basis()),
        observables: scenario
            .observables
            .iter()
            .map(|(name, obs)| {
                (
                    name.clone(),
                    obs.eigenvalues()
                        .iter()
                        .map(|&b| b.to_f64().unwrap_or(f64::NAN))
                        .collect(),
                )
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::ScenarioIo(e.to_string()))
}

/// Writes a scenario to a JSON file.
pub fn save_scenario<T: Scalar>(scenario: &Scenario<T>, path: &Path) -> Result<()> {
    let text = save_scenario_string(scenario)?;
    std::fs::write(path, text).map_err(|e| Error::ScenarioIo(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{build_three_path, ThreePathParams};
    use approx::assert_abs_diff_eq;

    fn three_path() -> Scenario<f64> {
        build_three_path(ThreePathParams::new(
            Complex::new(1.0 / 3.0, 0.0),
            Complex::new(1.0 / 3.0, 0.0),
        ))
        .unwrap()
    }

    #[test]
    fn round_trip_preserves_tables() {
        let original = three_path();
        let text = save_scenario_string(&original).unwrap();
        let reloaded: Scenario<f64> = load_scenario_str(&text).unwrap();
        let a = original.chain.path_table().unwrap();
        let b = reloaded.chain.path_table().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_abs_diff_eq!((a.entry(i, j) - b.entry(i, j)).norm(), 0.0, epsilon = 1e-15);
            }
        }
        assert_eq!(
            original.observables.keys().collect::<Vec<_>>(),
            reloaded.observables.keys().collect::<Vec<_>>()
        );
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scenario.json");
        let original = three_path();
        save_scenario(&original, &path).unwrap();
        let reloaded: Scenario<f64> = load_scenario(&path).unwrap();
        let a = original.chain.path_table().unwrap();
        let b = reloaded.chain.path_table().unwrap();
        assert_abs_diff_eq!((a.entry(0, 0) - b.entry(0, 0)).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn non_unit_initial_names_the_field() {
        let text = r#"{
            "schema": 1,
            "dim": 2,
            "initial": [[0.9, 0.0], [0.1, 0.0]],
            "mid_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            "final_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
        }"#;
        let err = load_scenario_str::<f64>(text).unwrap_err();
        match err {
            Error::InvalidScenario { field, .. } => assert_eq!(field, "initial"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn non_orthonormal_basis_names_the_field() {
        let text = r#"{
            "schema": 1,
            "dim": 2,
            "initial": [[1.0, 0.0], [0.0, 0.0]],
            "mid_basis": [[[1.0, 0.0], [0.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
            "final_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]
        }"#;
        let err = load_scenario_str::<f64>(text).unwrap_err();
        match err {
            Error::InvalidScenario { field, .. } => assert_eq!(field, "mid_basis"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn wrong_schema_rejected() {
        let text = r#"{
            "schema": 2,
            "dim": 1,
            "initial": [[1.0, 0.0]],
            "mid_basis": [[[1.0, 0.0]]],
            "final_basis": [[[1.0, 0.0]]]
        }"#;
        assert!(load_scenario_str::<f64>(text).is_err());
    }

    #[test]
    fn observable_length_checked() {
        let text = r#"{
            "schema": 1,
            "dim": 2,
            "initial": [[1.0, 0.0], [0.0, 0.0]],
            "mid_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            "final_basis": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
            "observables": {"pi_1": [1.0]}
        }"#;
        let err = load_scenario_str::<f64>(text).unwrap_err();
        match err {
            Error::InvalidScenario { field, .. } => assert_eq!(field, "observables.pi_1"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
