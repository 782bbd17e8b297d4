use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus mismatch: F_{0} vs F_{1}")]
    ModulusMismatch(u32, u32),
    #[error("zero has no inverse in F_{0}")]
    ZeroInverse(u32),
    #[error("{0} is not a prime (or is too large; moduli must be below 256)")]
    NotPrime(u32),
    #[error("group of order {order} exceeds the size cap {cap}")]
    SizeCap { order: u128, cap: u64 },
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
