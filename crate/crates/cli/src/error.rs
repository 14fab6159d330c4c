use std::fmt;

use onecircuit::Error;

/// Exit status 1 for bad input, 2 when a closed form disagrees with its
/// certification or with the oracle.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Contradiction(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Contradiction(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Contradiction(m) => write!(f, "internal contradiction: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Contradiction(m) => CliError::Contradiction(m),
            other => CliError::Input(other.to_string()),
        }
    }
}
