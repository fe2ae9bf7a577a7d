use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),

    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a root: {0}")]
    NotARoot(String),

    #[error("word is not reduced: {letters} letters but the element has length {length}")]
    NotReduced { letters: usize, length: usize },

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("standing assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("truncation orders differ: {left:?} vs {right:?}")]
    TruncationMismatch { left: Option<u32>, right: Option<u32> },

    #[error("operation requires an exact (untruncated) series")]
    NotExact,

    #[error("unsupported Cartan type {0}: only simply-laced types (A, D, E) are supported here")]
    UnsupportedType(String),

    #[error("invalid module spec: {0}")]
    SpecInvalid(String),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
