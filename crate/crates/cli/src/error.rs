use std::fmt;

/// CLI-level errors, carrying their process exit code: 1 for usage errors,
/// 2 for data errors, 3 for numerical-convergence errors.
#[derive(Debug, Clone)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(msg) => write!(f, "data error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<vecopt::Error> for CliError {
    fn from(err: vecopt::Error) -> Self {
        match err {
            vecopt::Error::ProjectionDidNotConverge { .. } => CliError::Numerical(err.to_string()),
            vecopt::Error::EstimationFailed(_) => CliError::Numerical(err.to_string()),
            vecopt::Error::DegenerateCone(_) | vecopt::Error::EmptyInput(_) => {
                CliError::Data(err.to_string())
            }
            vecopt::Error::DimensionMismatch { .. } | vecopt::Error::InvalidParameter(_) => {
                CliError::Usage(err.to_string())
            }
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
