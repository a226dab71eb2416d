use thiserror::Error;

/// Errors produced by field construction, code construction and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field with {size} elements exceeds the element bound {bound}")]
    FieldTooLarge { size: u128, bound: u64 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("element code {code} is outside a field of {size} elements")]
    ElementOutOfRange { code: u32, size: u32 },

    #[error("{0} is not a nonzero element of the subfield GF(q)")]
    NotInSubfield(u32),

    #[error("evaluation points are not distinct (index {first} and {second})")]
    DuplicatePoint { first: usize, second: usize },

    #[error("column multiplier at index {0} is zero")]
    ZeroMultiplier(usize),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("dimension {k} is invalid for length {n}")]
    InvalidDimension { k: usize, n: usize },

    #[error("message polynomial has degree {degree}, code dimension is {k}")]
    DegreeTooLarge { degree: usize, k: usize },

    #[error("polynomial degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },

    #[error("generator matrix has rank {rank}, expected {rows}")]
    RankDeficient { rank: usize, rows: usize },

    #[error("parameters out of range: {0}")]
    OutOfRange(String),

    #[error("parameters excluded: {0}")]
    Excluded(String),

    #[error("enumeration of {needed} items exceeds the cap {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("code has dimension zero")]
    ZeroDimensional,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
