use thiserror::Error;

/// Library-wide error type. Variants map onto the CLI exit-code taxonomy:
/// hypothesis/precondition failures exit 2, size overflows exit 3,
/// everything else is a usage error (exit 1).
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over GF({p}): divisible by a monic factor of degree {deg}")]
    ReducibleModulus { p: u64, deg: usize },
    #[error("unsupported field size q = {q}: no built-in modulus (supply one explicitly)")]
    UnsupportedFieldSize { q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration size {needed} exceeds cap {cap}")]
    SizeOverflow { needed: u128, cap: u128 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("rank {r} out of range 1..={max}")]
    RankOutOfRange { r: u128, max: u128 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("degree {d} too large: {why}")]
    DegreeTooLarge { d: u64, why: String },
    #[error("q - 1 divides d = {d}; the duality statement does not apply")]
    DegreeDivisible { d: u64 },
    #[error("malformed polynomial: {0}")]
    ParsePoly(String),
    #[error("corrupt cache record: {0}")]
    CacheCorrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
