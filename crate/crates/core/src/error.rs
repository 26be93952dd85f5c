use thiserror::Error;

/// Errors raised by constructions whose preconditions fail.
///
/// Verification results (identities that do or do not hold) are reported
/// through report structs, not through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("subspace is not contained in the ambient subspace: {0}")]
    NotContained(String),
    #[error("not a cochain map: {0}")]
    NotChainMap(String),
    #[error("operator does not commute with the differential: {0}")]
    NonCommuting(String),
    #[error("invalid Sasakian datum: {0}")]
    InvalidDatum(String),
    #[error("invalid flat bundle: {0}")]
    InvalidBundle(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("consistency failure: {0}")]
    Inconsistent(String),
    #[error("degree range: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
