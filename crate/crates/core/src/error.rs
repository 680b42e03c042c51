use std::io;

use thiserror::Error;

/// Errors raised by the numerical routines and the cache layer.
#[derive(Debug, Error)]
pub enum LabError {
    /// An argument lies outside the region where an operation is defined.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// An iterative solver did not meet its tolerance.
    #[error("{op} did not converge after {iterations} iterations: {detail}")]
    Convergence {
        op: &'static str,
        iterations: usize,
        detail: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cache file {path}: {detail}")]
    CacheFormat { path: String, detail: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl LabError {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        LabError::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn convergence(op: &'static str, iterations: usize, detail: impl Into<String>) -> Self {
        LabError::Convergence {
            op,
            iterations,
            detail: detail.into(),
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, LabError::Domain { .. })
    }

    pub fn is_convergence(&self) -> bool {
        matches!(self, LabError::Convergence { .. })
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
