use thiserror::Error;

use crate::poly::IntPoly;

/// Errors raised by the exact, numeric and geometric layers.
#[derive(Debug, Clone, Error)]
pub enum GoncharError {
    #[error("domain error: {0}")]
    Domain(String),

    /// `remainder` is the integer pseudo-remainder; for a monic divisor it is
    /// the ordinary remainder.
    #[error("inexact division: nonzero remainder {remainder}")]
    InexactDivision { remainder: IntPoly },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("unresolved classification: {0}")]
    UnresolvedClassification(String),

    /// A structural fact that must hold (a count law, a stored table) did not.
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, GoncharError>;
