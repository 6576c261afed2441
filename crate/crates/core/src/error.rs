use thiserror::Error;

/// Errors raised by the quantification engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arity mismatch: quantifier `{name}` expects {expected} argument(s), got {got}")]
    ArityMismatch {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("arguments are defined over different base sets")]
    BaseSetMismatch,

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// The exhaustive evaluation would enumerate more than `2^limit` tuples.
    #[error(
        "exact evaluation needs 2^{bits} terms, above the cap of 2^{limit}; use the cardinality DP or Monte Carlo strategy"
    )]
    CapExceeded { bits: usize, limit: usize },

    #[error("numeric domain error at instant {instant}: {reason}")]
    NumericDomain { instant: i64, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
