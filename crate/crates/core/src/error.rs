use std::io;

/// Errors produced by the numerical routines and their I/O helpers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed to reach its target accuracy.
    #[error("numeric error: {message}")]
    Numeric {
        message: String,
        /// Best estimate reached before giving up, when one exists.
        estimate: Option<f64>,
    },

    /// Eigen-decomposition of a sampled matrix failed.
    #[error("eigen-solver failure for seed {seed} (stream {stream})")]
    EigenSolver { seed: u64, stream: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>, estimate: Option<f64>) -> Self {
        Error::Numeric {
            message: msg.into(),
            estimate,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be finite, got {x}")))
    }
}
