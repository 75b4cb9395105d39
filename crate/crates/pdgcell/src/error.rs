use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    InvalidPrime(u32),
    #[error("binomial [{a} choose {b}] requires 0 <= b <= a")]
    BinomialRange { a: i64, b: i64 },
    #[error("invalid parameters n = {n}, l = {l}: {reason}")]
    InvalidParameters { n: usize, l: usize, reason: String },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("element is not in the expected span: {0}")]
    NotInSpan(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
