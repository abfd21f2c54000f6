use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] beatty_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
    #[error("verification failed")]
    Verification,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Core(_) => 1,
            CliError::Verification => 2,
            CliError::Io(_) => 3,
        }
    }
}
