use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed gate: {0}")]
    MalformedGate(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("capacity exceeded: {lines} lines is above the exhaustive limit of {limit}")]
    Capacity { lines: usize, limit: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: unsupported feature: {feature}")]
    Unsupported { line: usize, feature: String },
    #[error("line {line}: gate `{gate}` expects {expected} operands, found {found}")]
    Arity {
        line: usize,
        gate: String,
        expected: usize,
        found: usize,
    },
    #[error("insertion error: {0}")]
    Insertion(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported scrambling level: {0}")]
    UnsupportedLevel(String),
    #[error("undefined ratio: base {0} cost is zero")]
    UndefinedRatio(&'static str),
}
