use std::fmt;

/// Failures that end a run, with their exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or configuration: exit 2.
    Usage(String),
    /// A computation failed or disagreed: exit 1.
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Math(s) => f.write_str(s),
        }
    }
}

impl From<dlcusp_core::Error> for CliError {
    fn from(e: dlcusp_core::Error) -> Self {
        match e {
            dlcusp_core::Error::InvalidPrime(_) => CliError::Usage(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}
