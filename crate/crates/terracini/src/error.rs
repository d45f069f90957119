//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A count or dimension exceeds the width of the requested return type.
    #[error("value overflow: {0}")]
    Overflow(String),

    /// A matrix or basis would exceed the configured size cap.
    #[error("size {size} exceeds the configured cap of {cap} (set ND_MATRIX_CAP to raise it): {what}")]
    SizeCap {
        what: String,
        size: u128,
        cap: u128,
    },

    /// A component-type enumeration would produce too many types.
    #[error("type enumeration of {count} types exceeds the cap of {cap}")]
    TypeCap { count: u128, cap: u128 },

    #[error("modulus {0} is not an odd prime below 2^63")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),

    /// The nondegenerate-sample budget ran out while resampling.
    #[error("no nondegenerate sample found after {0} attempts")]
    SamplingBudget(u32),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
