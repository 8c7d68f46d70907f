use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("invalid scenario: {0}")]
    Invalid(String),

    #[error("unknown G candidate `{name}` (shipped: {})", shipped.join(", "))]
    UnknownCandidate { name: String, shipped: Vec<&'static str> },

    #[error(transparent)]
    Model(#[from] xtime_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    /// True for problems with the input rather than the environment.
    pub fn is_validation(&self) -> bool {
        !matches!(self, HarnessError::Io { .. })
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
