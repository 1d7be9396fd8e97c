use thiserror::Error;

/// Errors raised by the exact-arithmetic engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree length mismatch: {0} vs {1}")]
    DegreeLength(usize, usize),
    #[error("generator tables differ")]
    TableMismatch,
    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("invalid truncation order {requested}: series ring is truncated at {max}")]
    InvalidTruncation { requested: u32, max: u32 },
    #[error("zero body: element is not invertible anywhere on the symbolic domain")]
    ZeroBody,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("singular body: matrix is invertible nowhere")]
    SingularBody,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("malformed json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
