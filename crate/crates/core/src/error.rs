use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field elements belong to different fields")]
    SpecMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("entry {value} is not an element of GF({q})")]
    FieldMismatch { value: u64, q: u64 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("linear system is inconsistent")]
    InconsistentSystem,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bidegree mismatch: ({0},{1}) vs ({2},{3})")]
    DegreeMismatch(usize, usize, usize, usize),
    #[error("degree underflow")]
    DegreeUnderflow,
    #[error("extension enumeration needs a prime base field, got GF({p}^{e})")]
    UnsupportedBaseField { p: u64, e: u32 },
    #[error("non-integer result: {0}")]
    NonIntegerResult(String),
    #[error("design hypothesis fails: {0}")]
    DesignHypothesisFails(String),
    #[error("Pochhammer denominator vanishes at step {0}")]
    PochhammerZeroDenominator(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
