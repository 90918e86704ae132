//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A physical or numerical parameter violates its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A query point lies outside the plate domain or thickness.
    #[error("out of domain: {0}")]
    OutOfDomain(String),

    /// Configuration file could not be read or fails schema validation.
    #[error("config error: {0}")]
    Config(String),

    /// Factorization or eigen iteration failed.
    #[error("solver error: {0}")]
    Solver(String),

    /// Internal consistency violation (DOF bookkeeping, dimension mismatch).
    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the CLI: 2 config, 3 solver, 1 other.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidParameter(_) => 2,
            Error::Solver(_) => 3,
            _ => 1,
        }
    }
}
