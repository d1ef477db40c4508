use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime fields need p >= 5 and p < 2^31, got {0}")]
    UnsupportedPrime(u64),
    #[error("operation needs a prime field, got the rationals")]
    NotPrimeField,
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("line bundles live on different curves")]
    CurveMismatch,
    #[error("invalid node subset: {0}")]
    InvalidNodeSubset(String),
    #[error("degenerate point configuration: {0}")]
    Degenerate(String),
    #[error("point {0} is a node branch")]
    PointOnNode(String),
    #[error("curve is not hyperelliptic")]
    NotHyperelliptic,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bad reduction mod {p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
