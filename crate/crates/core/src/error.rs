use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource budget exhausted: {0}")]
    Budget(String),
    #[error("{0}")]
    Incomplete(String),
}

pub type Result<T> = std::result::Result<T, Error>;
