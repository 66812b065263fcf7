use thiserror::Error;

/// Errors raised by the algebraic constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchurError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("matrix is not upper triangular")]
    NotUpperTriangular,

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("requires n >= r, got n = {n}, r = {r}")]
    NeedsLargeN { n: usize, r: u32 },

    #[error("marginal mismatch: {0}")]
    MarginalMismatch(String),

    #[error("endomorphism is not invariant under the symmetric group")]
    NotInvariant,

    #[error("tensor oracle dimension {dim} exceeds the limit {limit}")]
    OracleTooLarge { dim: u128, limit: u128 },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("degree {0} is outside the complex")]
    DegreeOutOfRange(i64),

    #[error("map is not in the span of the expected basis: {0}")]
    NotInSpan(String),

    #[error("differentials compose to a nonzero map at degree {0}")]
    NotAComplex(i64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SchurError>;
