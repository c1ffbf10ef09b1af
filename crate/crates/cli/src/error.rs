use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Guard(facloc::Error),
    #[error("{0}")]
    Mismatch(facloc::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 parse, 3 enumeration guard, 4 mechanism/instance mismatch, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Mismatch(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<facloc::Error> for CliError {
    fn from(err: facloc::Error) -> Self {
        use facloc::Error as E;
        match err {
            E::GuardExceeded { .. } => CliError::Guard(err),
            E::RequiresLine { .. } | E::FacilityCount { .. } | E::MalformedWeights(_) | E::InvalidAgent { .. } => {
                CliError::Mismatch(err)
            }
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Parse(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
