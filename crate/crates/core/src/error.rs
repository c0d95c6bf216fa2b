use thiserror::Error;

/// Errors raised by the samplers and their parameter types.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported digit size {0}; expected one of 1, 4, 8, 16")]
    UnsupportedDigitSize(u32),
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("rational {0} does not fit in 64-bit numerator and denominator")]
    Overflow(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("probability {0} must lie strictly between 0 and 1")]
    ProbabilityOutOfRange(String),
    #[error("sigma {0} must exceed sqrt(2)/2")]
    SigmaTooSmall(String),
    #[error("selector argument m = {0} must be even and at least 2")]
    InvalidSelector(u64),
    #[error("precision must be at least 1 bit")]
    ZeroPrecision,
}

pub type Result<T> = std::result::Result<T, Error>;
