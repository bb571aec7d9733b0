use std::path::PathBuf;

use geodesic_core::Error as CoreError;

/// Exit status for a bad or missing input.
pub const EXIT_CONFIG: i32 = 2;
/// Exit status when a size or search cap is hit.
pub const EXIT_CAP: i32 = 3;
/// Exit status when a validation step disagrees with the oracle.
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    Disagreement(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl ToolError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ToolError::Disagreement(_) => EXIT_DISAGREEMENT,
            ToolError::Core(e) => match e {
                CoreError::ResourceCap { .. }
                | CoreError::BeyondOracle { .. }
                | CoreError::AbsentInverse { .. }
                | CoreError::Overflow => EXIT_CAP,
                CoreError::SurjectivityFailed(_) => EXIT_DISAGREEMENT,
                _ => EXIT_CONFIG,
            },
            _ => EXIT_CONFIG,
        }
    }
}

pub type Result<T, E = ToolError> = std::result::Result<T, E>;
