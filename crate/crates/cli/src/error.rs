use openness_core::ModelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Help or version text requested; not a failure.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error("{context}: {source}")]
    Model {
        context: String,
        #[source]
        source: ModelError,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Io(_) => 4,
            CliError::Model { .. } => 1,
        }
    }

    pub(crate) fn model(context: impl Into<String>, source: ModelError) -> Self {
        match source {
            ModelError::Domain { .. } => CliError::Validation(source.to_string()),
            source => CliError::Model {
                context: context.into(),
                source,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
