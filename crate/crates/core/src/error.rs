use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a surjection: {0}")]
    NotSurjective(String),
    #[error("degenerate sequence (equal adjacent entries): {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("position {position} out of range 1..={arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("empty bar tensor")]
    EmptyBarTensor,
    #[error("malformed simplicial set: {0}")]
    MalformedSimplicialSet(String),
    #[error("space not supported by the loop-space pipeline: {0}")]
    UnsupportedSpace(String),
    #[error("degree {degree} is beyond the truncation (cutoff {cutoff})")]
    BeyondTruncation { degree: i32, cutoff: i32 },
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("not a cocycle")]
    NotACocycle,
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
