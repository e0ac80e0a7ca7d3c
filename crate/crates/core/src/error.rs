use thiserror::Error;

use crate::validate::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The input is not shaped like the object it claims to be.
    #[error("shape error: {0}")]
    Shape(String),

    /// An entry lies outside the alphabet of its container.
    #[error("entry {value} at ({row}, {col}) is outside the allowed range")]
    EntryRange { row: usize, col: usize, value: i64 },

    /// The input failed a validator that the operation requires.
    #[error("{what} precondition failed: {report}")]
    Precondition {
        what: &'static str,
        report: ValidationReport,
    },

    #[error("order {n} exceeds the configured ceiling {ceiling}")]
    ResourceLimit { n: usize, ceiling: usize },

    #[error("dilation factor {t} exceeds the configured ceiling {ceiling}")]
    DilationLimit { t: u64, ceiling: u64 },

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("interpolation error: {0}")]
    Interpolation(String),

    /// An internal assertion tripped. This signals a bug, not bad input.
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
