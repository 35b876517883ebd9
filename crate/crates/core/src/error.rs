use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// reported verbatim by the CLI.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid box {0}")]
    InvalidBox(String),

    #[error("not an up-set: {0}")]
    NotUpSet(String),

    #[error("diagonal index {index} outside {lo}..={hi}")]
    DiagonalOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("invalid d-vector: {0}")]
    InvalidDVector(String),

    #[error("cannot delete diagonal {index}: {reason}")]
    DiagonalDeletion { index: i64, reason: String },

    #[error("invalid flag of up-sets: {0}")]
    InvalidFlag(String),

    #[error("invalid linear extension: {0}")]
    InvalidLinearExtension(String),

    #[error("step index {index} out of range 0..={max}")]
    StepOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("polytope is empty")]
    Empty,

    #[error("zero normal vector in constraint")]
    ZeroNormal,

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("invalid Gelfand-Tsetlin data: {0}")]
    InvalidGt(String),

    #[error("invalid tropical map: {0}")]
    InvalidMap(String),

    #[error("Ehrhart fit failed verification: {0}")]
    FitVerification(String),

    #[error("Ehrhart function is not a polynomial (period {0})")]
    PeriodNotOne(u64),

    #[error("verification failed at {step}: {reason}")]
    VerificationFailed { step: String, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
