use std::path::PathBuf;

use fusion_core::gcore::GroupError;
use thiserror::Error;

/// Input problems. Anything here maps to exit code 2.
#[derive(Debug, Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },
    #[error("{origin}: unsupported format {found}, expected {expected}")]
    Format {
        origin: String,
        found: u32,
        expected: u32,
    },
    #[error("group {group:?}, generator {generator}: {reason}")]
    InvalidGroup {
        group: String,
        generator: usize,
        reason: GroupError,
    },
    #[error("group {group:?}: {reason}")]
    GroupClosure { group: String, reason: GroupError },
    #[error("duplicate group name {0:?}")]
    DuplicateGroup(String),
    #[error("duplicate scenario id {0:?}")]
    DuplicateScenario(String),
    #[error("scenario {scenario:?}: unknown group {group:?}")]
    UnknownGroup { scenario: String, group: String },
    #[error("scenario {scenario:?}: unknown check {check:?}")]
    UnknownCheck { scenario: String, check: String },
    #[error("scenario {scenario:?}: {reason}")]
    InvalidScenario { scenario: String, reason: String },
}

impl AppError {
    pub(crate) fn scenario(id: &str, reason: impl ToString) -> Self {
        AppError::InvalidScenario {
            scenario: id.to_string(),
            reason: reason.to_string(),
        }
    }
}
