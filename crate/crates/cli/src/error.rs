use thiserror::Error;

/// Failures of a CLI invocation, each with its own exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("{0}")]
    ResidualExceeded(String),
    #[error("internal check failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) => 2,
            CliError::ResidualExceeded(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<hilbert_core::Error> for CliError {
    fn from(e: hilbert_core::Error) -> Self {
        use hilbert_core::Error as E;
        match e {
            E::Internal(msg) => CliError::Internal(msg),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
