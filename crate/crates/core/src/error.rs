use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient of q^{index} requested beyond precision {prec}")]
    PrecisionExceeded { index: i64, prec: i64 },
    #[error("non-invertible series")]
    NonInvertible,
    #[error("singular curve: discriminant {0} vanishes")]
    SingularCurve(String),
    #[error("{0}")]
    SearchCap(String),
    #[error("not a polynomial in t of degree <= {maxdeg}: first offending coefficient at q^{index}")]
    Recognition { maxdeg: usize, index: i64 },
    #[error("check failed: {0}")]
    CheckFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
