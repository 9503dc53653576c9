use thiserror::Error;

use crate::spec::SpecError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}:{err}")]
    Spec { path: String, err: SpecError },
    #[error(transparent)]
    Core(#[from] superspace_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

impl CliError {
    /// 2 for bad input, 3 for an exhausted budget or a truncated computation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(superspace_core::Error::Budget(_) | superspace_core::Error::Incomplete(_)) => 3,
            _ => 2,
        }
    }
}
