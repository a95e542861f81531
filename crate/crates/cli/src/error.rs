use std::io;

use thiserror::Error;

/// Process exit codes. Stable for scripting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Success = 0,
    Usage = 2,
    InputFormat = 3,
    Unsupported = 4,
    Io = 5,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Solver(linrec::Error),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::Usage,
            CliError::Format(_) => ExitCode::InputFormat,
            CliError::Solver(e) if e.is_unsupported_input() => ExitCode::Unsupported,
            CliError::Solver(_) => ExitCode::Usage,
            CliError::Io(_) => ExitCode::Io,
        }
    }
}

impl From<linrec::Error> for CliError {
    fn from(e: linrec::Error) -> Self {
        CliError::Solver(e)
    }
}
