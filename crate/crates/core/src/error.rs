use thiserror::Error;

/// Errors raised by the library.
///
/// Axiom and law violations are not errors: they are returned as reports by
/// the various `validate` functions. Errors here mean that an input could not
/// be interpreted at all, or that an operation is undefined on its arguments.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown element id `{0}`")]
    UnknownElement(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("element `{0}` has dimension 0 and therefore no faces")]
    DimZeroFaces(String),
    #[error("cells are not {k}-composable: {k}-target {left} differs from {k}-source {right}")]
    NotComposable { k: usize, left: String, right: String },
    #[error("capacity of {0} cells exceeded")]
    CapacityExceeded(usize),
    #[error("no excision order found for cell {0}; the complex is not loop-free")]
    NoExcision(String),
    #[error("incompatible assignment at generator `{generator}`: {reason}")]
    Incompatible { generator: String, reason: String },
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("cell `{0}` is not a 0-cell")]
    NotZeroCell(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("coefficient mismatch: {0}")]
    Coefficients(String),
    #[error("cosimplicial diagram too short: need levels 0..={needed}, have {have}")]
    Truncation { needed: usize, have: usize },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
