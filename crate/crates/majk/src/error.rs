use thiserror::Error;

/// Errors from circuit construction, evaluation, oracles, and solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("invalid threshold gate: {0}")]
    InvalidGate(String),

    #[error("gate fan-in {fan_in} exceeds the declared bound k = {declared}")]
    FanInExceeded { fan_in: u64, declared: u64 },

    #[error("the input length n must be at least 1")]
    EmptyDomain,

    #[error("refusing exhaustive enumeration over {n} variables (limit {limit})")]
    DomainTooLarge { n: usize, limit: usize },

    #[error("truth table has {actual} entries, expected {expected}")]
    TruthTableSize { expected: usize, actual: usize },

    #[error("query rejected: set size {size} outside 1..={limit}")]
    QueryRejected { size: usize, limit: usize },

    #[error("the oracle set-size limit k must be at least 1")]
    ZeroArity,

    #[error("invalid block partition parameters: n = {n}, k = {k} (need 1 <= k <= n)")]
    BadPartition { n: usize, k: usize },

    #[error("balanced-set search requires the two sets to have opposite majorities")]
    EqualMajorities,

    #[error("balanced-set search requires disjoint, equal-size, nonempty sets")]
    BadBalancedInput,

    #[error("oracle answers are mutually inconsistent: {0}")]
    InconsistentOracle(String),

    #[error("solver exceeded its step limit of {limit}")]
    StepLimit { limit: usize },

    #[error("{field}: {message}")]
    Schema { field: String, message: String },

    #[error("invalid circuit JSON: {0}")]
    Json(String),

    #[error("invalid bit character {found:?} at position {position}")]
    BadBitChar { position: usize, found: char },
}

pub type Result<T> = std::result::Result<T, Error>;
