use std::fmt;

use nielsen_core::Error;

/// A failure together with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments (exit 2).
    Usage(String),
    /// An input file could not be read or is invalid (exit 3).
    Input(String),
    /// A search or enumeration would exceed its budget (exit 4).
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Budget(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Budget(m) => write!(f, "refused: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            Error::NotAHomomorphism { .. } => CliError::Input(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub trait Context<T> {
    /// Attributes a failure to the named input file.
    fn in_file(self, path: &std::path::Path) -> CliResult<T>;
}

impl<T> Context<T> for nielsen_core::Result<T> {
    fn in_file(self, path: &std::path::Path) -> CliResult<T> {
        self.map_err(|e| match e {
            Error::BudgetExceeded(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(format!("{}: {e}", path.display())),
        })
    }
}
