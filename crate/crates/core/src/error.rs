use thiserror::Error;

/// Errors raised by the field and polynomial machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{what} {value} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: String,
        cap: u128,
    },
    #[error("residue {residue} is not coprime to {modulus}")]
    NotCoprime { residue: u128, modulus: u128 },
    #[error("subgroups live in different unit groups ({left} vs {right})")]
    ParentMismatch { left: u128, right: u128 },
    #[error("{small} does not divide {big}")]
    NotDivisor { small: u128, big: u128 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} does not divide {ell} - 1")]
    QDoesNotDivide { q: u64, ell: u64 },
    #[error("found only {found} of {needed} admissible primes below {bound}")]
    SearchExhausted {
        needed: usize,
        found: usize,
        bound: u64,
    },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible over the rationals: {0}")]
    Reducible(String),
    #[error("coefficient bound needs {needed} bits, more than the {available} bits allowed")]
    PrecisionInsufficient { needed: u64, available: u64 },
    #[error("Gaussian period is not primitive: cosets {0} and {1} give equal periods")]
    PeriodNotPrimitive(u128, u128),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal check failed: {0}")]
    Assertion(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn cap(what: &'static str, value: impl ToString, cap: u128) -> Self {
        Error::CapExceeded {
            what,
            value: value.to_string(),
            cap,
        }
    }
}
