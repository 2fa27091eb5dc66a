//! Error type shared by the library.

use thiserror::Error;

/// Errors reported by the library.
///
/// Variants are split into two families: precondition failures (the input
/// does not satisfy the contract of the requested operation) and internal
/// inconsistencies (two independent formulas disagreed, or an invariant that
/// must hold for correct output failed). The CLI maps the former to exit
/// code 2 and the latter to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty support")]
    EmptySupport,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("negative exponent: {0}")]
    NegativeExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the origin lies in the support; the local invariant requires a vanishing constant term")]
    OriginInSupport,
    #[error("support is not convenient: {0}")]
    NotConvenient(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors that indicate a bug or a broken invariant rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}
