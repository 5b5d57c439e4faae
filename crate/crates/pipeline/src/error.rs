use std::path::PathBuf;

use fcell_core::ModelError;
use fcell_evolve::EvolveError;
use fcell_surrogate::SurrogateError;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, PipelineError>;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("configuration: {0}")]
    Config(String),
    /// Solver, training or optimizer failure.
    #[error("numerical: {0}")]
    Numeric(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// A file was read but its contents are unusable.
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
}

impl PipelineError {
    /// Process exit status for the command-line tool.
    pub fn exit_code(&self) -> u8 {
        match self {
            PipelineError::Config(_) => 2,
            PipelineError::Numeric(_) => 3,
            PipelineError::Io { .. } | PipelineError::Input { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        PipelineError::Io {
            path: path.into(),
            source,
        }
    }

    /// Attribute a surrogate failure that happened while handling `path`.
    pub(crate) fn from_surrogate_at(path: impl Into<PathBuf>, e: SurrogateError) -> Self {
        let path = path.into();
        match e {
            SurrogateError::Io(source) => PipelineError::Io { path, source },
            SurrogateError::Csv(_) | SurrogateError::Json(_) | SurrogateError::Format(_) => {
                PipelineError::Input {
                    path,
                    message: e.to_string(),
                }
            }
            other => PipelineError::Numeric(format!("{}: {other}", path.display())),
        }
    }
}

impl From<ModelError> for PipelineError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Domain { .. } => PipelineError::Config(e.to_string()),
            _ => PipelineError::Numeric(e.to_string()),
        }
    }
}

impl From<SurrogateError> for PipelineError {
    fn from(e: SurrogateError) -> Self {
        match e {
            SurrogateError::Domain(m) => PipelineError::Config(m),
            other => PipelineError::Numeric(other.to_string()),
        }
    }
}

impl From<EvolveError> for PipelineError {
    fn from(e: EvolveError) -> Self {
        match e {
            EvolveError::Config(m) => PipelineError::Config(m),
            other => PipelineError::Numeric(other.to_string()),
        }
    }
}
