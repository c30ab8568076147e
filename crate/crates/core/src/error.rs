use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot combine values from Q(√{0}) and Q(√{1})")]
    MixedRadicands(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({0}×{1})")]
    NotSquare(usize, usize),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("squared-distance matrix is not realizable (inertia +{0} -{1} 0:{2})")]
    NotRealizable(usize, usize, usize),
    #[error("invalid squared-distance matrix: {0}")]
    InvalidDistanceMatrix(String),
    #[error("operation requires s = {expected}, got s = {got}")]
    WrongS { expected: String, got: usize },
    #[error("invalid N = {0}; the cap needs N >= 2")]
    InvalidN(u64),
    #[error("inconsistent invariants: {0}")]
    InconsistentK(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("distance index {index} out of range for s = {s} (indices are zero-based)")]
    IndexOutOfRange { index: usize, s: usize },
    #[error("not a distance set: {0}")]
    NotDistanceSet(String),
    #[error("parameter out of range: {0}")]
    RangeError(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("spectrum mismatch: {0}")]
    SpectrumMismatch(String),
    #[error("unsupported polygon size n = {0}")]
    UnsupportedN(usize),
    #[error("invalid Paley parameter q = {0}; need a prime q ≡ 1 (mod 4), q <= 97")]
    InvalidQ(u64),
    #[error("invalid catalog parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
