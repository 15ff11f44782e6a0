//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A word, edge label, or matrix index refers to a symbol outside the
    /// declared alphabet.
    #[error("alphabet mismatch: symbol {symbol} outside alphabet of size {alphabet}")]
    AlphabetMismatch { symbol: u64, alphabet: usize },

    /// The presentation defines the empty shift space; entropy and word
    /// counts are undefined.
    #[error("presentation defines the empty shift space")]
    EmptyShift,

    /// A language oracle returned counts that violate a property every
    /// genuine subshift language satisfies.
    #[error("inconsistent language oracle: {0}")]
    InconsistentOracle(String),

    /// The numerical root finder did not reach the requested residual
    /// within its iteration budget.
    #[error("root finding did not converge within budget")]
    NoConvergence,

    /// Backward iteration was started at a point whose preimages do not
    /// equidistribute (the fixed point of z^d at the origin).
    #[error("base point is exceptional for this polynomial")]
    ExceptionalPoint,

    /// Measure weights are not strictly positive rationals summing to one.
    #[error("infeasible measure weights: {0}")]
    InfeasibleWeights(String),

    /// Increasing the oracle precision did not separate a continued
    /// fraction quotient within the configured limit.
    #[error("oracle precision exhausted at continued-fraction step {0}")]
    PrecisionExhausted(usize),

    /// The input to a continued-fraction expansion is (indistinguishable
    /// from) a rational number, so the expansion terminates.
    #[error("rational rotation number detected at continued-fraction step {0}")]
    RationalDetected(usize),

    /// Structurally invalid input: empty forbidden words, non-monotone
    /// breakpoints, grids coarser than the separation scale, and similar.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Exact transport arithmetic would overflow the fixed-width fast path.
    /// Weight denominators and cost denominators have documented caps.
    #[error("transport instance exceeds exact arithmetic bounds: {0}")]
    TransportOverflow(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
