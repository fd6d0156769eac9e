use std::fmt;

use serde::{Deserialize, Serialize};

/// Anything that ends a run with exit code 1.
#[derive(Debug)]
pub enum CliError {
    Core(realav_core::Error),
    /// Malformed input file contents.
    Input(String),
    Io(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Input(_) => "InvalidInput",
            CliError::Io(_) => "Io",
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport { error: self.kind().to_string(), message: self.to_string() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<realav_core::Error> for CliError {
    fn from(e: realav_core::Error) -> Self {
        CliError::Core(e)
    }
}

/// The JSON object written to stderr on failure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: String,
    pub message: String,
}
