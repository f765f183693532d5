//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by construction, validation and numerical routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {dim} out of supported range 1..=16")]
    UnsupportedDimension { dim: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("non-finite value in {what}")]
    NonFinite { what: String },

    #[error("state norm defect {defect:e} exceeds input tolerance")]
    NotNormalized { defect: f64 },

    #[error("matrix is not unitary: max entrywise defect {defect:e}")]
    NotUnitary { defect: f64 },

    #[error("basis is not orthonormal: |<v{i}|v{j}> - delta| = {defect:e}")]
    NotOrthonormal { i: usize, j: usize, defect: f64 },

    #[error("post-selection probability {probability:e} for final state {index} is dark")]
    DarkFinalState { index: usize, probability: f64 },

    #[error("unperturbed detection probability {probability:e} vanishes")]
    VanishingProbability { probability: f64 },

    #[error("quadrature grid inadequate: normalization defect {defect:e} (want <= {tolerance:e})")]
    GridTooCoarse { defect: f64, tolerance: f64 },

    #[error("invalid parameter {name}: {message}")]
    InvalidParameter { name: String, message: String },

    #[error("scenario field `{field}`: {message}")]
    InvalidScenario { field: String, message: String },

    #[error("scenario file: {0}")]
    ScenarioIo(String),

    #[error("empty input: {what}")]
    EmptyInput { what: String },
}

impl Error {
    pub(crate) fn invalid_param(name: &str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name: name.to_string(),
            message: message.into(),
        }
    }

    pub(crate) fn invalid_field(field: &str, message: impl Into<String>) -> Self {
        Error::InvalidScenario {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::GridTooCoarse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
