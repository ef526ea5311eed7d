use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("exponent sum {got} does not match degree {expected}")]
    DegreeMismatch { expected: u32, got: u64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("form has no terms")]
    EmptyForm,
    #[error("frame is singular")]
    SingularFrame,
    #[error("point has all coordinates zero")]
    ZeroPoint,
    #[error("invalid one-parameter subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("N = {n} is below the separation threshold {threshold} for r = {r}, d = {d}")]
    BelowThreshold { n: u32, threshold: u32, r: usize, d: u32 },
    #[error("empty frame family")]
    EmptyFrames,
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
