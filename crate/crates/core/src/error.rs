use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2")]
    ModulusTooSmall,

    #[error("exponent is reduced but not saturated; the true exponent cannot be reconstructed")]
    UnreconstructableExponent,

    #[error("requested {requested} digits exceeds the configured cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("invalid base {0}: tetration bases must be at least 2")]
    InvalidBase(u64),

    #[error("base {0} is a multiple of 10")]
    MultipleOfTen(u64),

    #[error("base {0} is not a multiple of 10")]
    NotMultipleOfTen(u64),

    #[error("invalid height {0}")]
    InvalidHeight(u64),

    #[error("digit position {position} is outside 1..={len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("digit count must be at least 1")]
    ZeroDigits,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("valuation of zero is infinite")]
    ZeroValuation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("congruence speed of base {base} not confirmed constant below height {limit}")]
    OnsetNotConfirmed { base: u64, limit: u64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Whether the failure comes from the digit cap rather than from bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::OnsetNotConfirmed { .. }
        )
    }
}
