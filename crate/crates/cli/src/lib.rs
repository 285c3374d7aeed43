//! Command implementations behind the `cherednik` binary, plus the acceptance runner.

pub mod acceptance;
pub mod commands;
pub mod job;
pub mod report;
pub mod suites;

use cherednik_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    /// Process exit code: 2 for bad invocations, 1 for computation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                Error::Parse(_) | Error::InvalidParameter(_) | Error::InvalidGroup(_) | Error::UnknownRep(_),
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}
