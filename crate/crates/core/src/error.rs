use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rank exceeded: {0}")]
    RankExceeded(String),
    #[error("multidegree window {requested} exceeds hard cap {cap}")]
    WindowOverflow { requested: i64, cap: i64 },
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("sheaf mismatch: {0}")]
    SheafMismatch(String),
    #[error("not a top-degree class: {0}")]
    NotTopDegree(String),
    #[error("invalid sheaf data: {0}")]
    InvalidSheaf(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;
