use thiserror::Error;

/// Errors raised by field construction, linear algebra, enumeration and the
/// verification drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    BadFieldParameters(String),
    #[error("no embedding of the base field found (internal error)")]
    NoEmbeddingFound,
    #[error("size guard exceeded for {what}: {requested} > {limit}")]
    SizeGuardExceeded {
        what: &'static str,
        requested: String,
        limit: u64,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operand does not belong to this field")]
    FieldMismatch,
    #[error("no element of order {n} in a field of order {order}")]
    NoSuchRoot { n: u64, order: u64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("torus coordinate {0} is zero")]
    ZeroTorusCoordinate(usize),
    #[error("gcd({k}, {n}) != 1")]
    NotCoprime { k: usize, n: usize },
    #[error("field of order {order} has no primitive {n}-th root of unity")]
    NoPrimitiveRoot { n: usize, order: u64 },
    #[error("element does not have multiplicative order {0}")]
    BadOrder(usize),
    #[error("bad range: {0}")]
    BadRange(String),
    #[error("torus action is not free: {0}")]
    NonFreeAction(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(what: &'static str, requested: impl ToString, limit: u64) -> Error {
    Error::SizeGuardExceeded {
        what,
        requested: requested.to_string(),
        limit,
    }
}
