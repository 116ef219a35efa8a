use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} exceeds the supported bound 2^20")]
    ModulusTooLarge(u64),

    #[error("bad prime {0}: the varieties only have good reduction for p >= 5")]
    BadPrime(u64),

    #[error("residue {value} out of range for F_{p}")]
    OutOfRange { value: u64, p: u64 },

    #[error("leading q-power {0}/24 is not a positive integer")]
    NonIntegralLeadingPower(u64),

    #[error("invalid eta product: {0}")]
    InvalidEtaSpec(String),

    #[error("truncation must be at least 1")]
    EmptyTruncation,

    #[error("64-bit overflow while computing coefficient {0}")]
    Overflow(usize),

    #[error("coefficient a_{index} not available (expansion has {available})")]
    CoefficientUnavailable { index: usize, available: usize },

    #[error("index {index} out of range for {len} values")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent count: {0}")]
    Inconsistent(String),

    #[error("cache error: {0}")]
    Cache(String),
}
