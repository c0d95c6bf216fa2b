use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] exact_gauss::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration depth {0} exceeds the limit of {max}", max = crate::enumerate::MAX_DEPTH)]
    DepthTooLarge(u32),
    #[error("unknown oracle value `{0}`")]
    UnknownOracle(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
