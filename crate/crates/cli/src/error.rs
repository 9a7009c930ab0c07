use std::fmt;

use wqed_core::Error;

/// A failed command, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: unreadable or invalid scenario, infeasible request. Exit 2.
    Input(String),
    /// The computation ran but a numerical-quality threshold was exceeded.
    /// Exit 3.
    Quality(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Quality(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Quality(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NormDrift(_) | Error::NotSettled(_) | Error::Singular { .. } => {
                CliError::Quality(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
