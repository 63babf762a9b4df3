//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} out of range (supported: 2..=8)")]
    DimensionOutOfRange(usize),

    #[error("element is not invertible: {0}")]
    NotInvertible(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("multivector is not a blade: {0}")]
    NotABlade(String),

    #[error("point violates manifold constraints (max residual {residual:.3e})")]
    OffManifold { residual: f64 },

    #[error("finite-difference step {0:.3e} underflowed")]
    StepUnderflow(f64),

    #[error("linear map is singular (|det| = {0:.3e})")]
    SingularMap(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integration chain is invalid: {0}")]
    ChainInvalid(String),

    #[error("boundary orientation sign could not be verified: {0}")]
    Orientation(String),

    #[error("incision bound unavailable: {0}")]
    BoundUnavailable(String),

    #[error("unknown entry `{0}`")]
    UnknownEntry(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
