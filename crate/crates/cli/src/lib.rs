//! Library side of the `rmt-tw` command-line tool. Every subcommand is a
//! plain function here so the integration tests can drive it directly.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use rmt_tw::tw::painleve::{DEFAULT_S_MAX, DEFAULT_S_MIN, DEFAULT_TOL};
use rmt_tw::tw::{default_solution, load_or_solve};
use rmt_tw::{Field, SamplePath, TwCdf, TwKind, Variant};

mod pca;
mod suites;
mod table;

pub use pca::{cmd_pca_test, read_matrix, PcaReport, VARIANCE_WARN_TOL};
pub use suites::{cmd_verify, Suite, SuiteOutcome, CPHI_SCHEDULE, KERNEL_POINTS};
pub use table::{cmd_table, TableArtifact, TableColumn};

/// Environment variable naming the Painlevé table cache directory.
pub const CACHE_ENV: &str = "RMT_TW_CACHE";

/// Quantiles of the TW reference column.
pub const REFERENCE_QUANTILES: [f64; 9] =
    [-3.9, -3.18, -2.78, -1.91, -1.27, -0.59, 0.45, 0.98, 2.02];

pub const DEFAULT_REPS: u64 = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] rmt_tw::Error),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 verification or numeric failure, 2 domain error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        use rmt_tw::Error as E;
        match self {
            CliError::Core(E::Domain(_)) => 2,
            CliError::Core(E::Io(_) | E::Parse(_)) | CliError::Input(_) | CliError::Io(_) => 3,
            CliError::Core(E::Numeric { .. } | E::EigenSolver { .. }) => 1,
            CliError::Verification(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dims: Vec<(u64, u64)>,
    pub reps: u64,
    pub variant: Variant,
    pub field: Field,
    pub seed: u64,
    pub workers: usize,
    pub reference_quantiles: Vec<f64>,
}

impl ExperimentConfig {
    pub fn new(dims: Vec<(u64, u64)>) -> Self {
        Self {
            dims,
            reps: DEFAULT_REPS,
            variant: Variant::Adjusted,
            field: Field::Real,
            seed: 0,
            workers: 1,
            reference_quantiles: REFERENCE_QUANTILES.to_vec(),
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let domain = |m: String| CliError::Core(rmt_tw::Error::Domain(m));
        if self.dims.is_empty() {
            return Err(domain("dims must not be empty".into()));
        }
        if self.reps == 0 {
            return Err(domain("reps must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(domain("workers must be at least 1".into()));
        }
        if self.reference_quantiles.windows(2).any(|w| w[0] >= w[1]) {
            return Err(domain(
                "reference quantiles must be strictly ascending".into(),
            ));
        }
        Ok(())
    }

    /// The fast path for real data, the dense path otherwise.
    pub fn path(&self) -> SamplePath {
        match self.field {
            Field::Real => SamplePath::Tridiagonal,
            Field::Complex => SamplePath::Dense,
        }
    }

    /// TW1 for the real field, TW2 for the complex one.
    pub fn law(&self) -> TwKind {
        match self.field {
            Field::Real => TwKind::Tw1,
            Field::Complex => TwKind::Tw2,
        }
    }
}

/// Parses `NxP`.
pub fn parse_dims(text: &str) -> CliResult<(u64, u64)> {
    let bad = || {
        CliError::Core(rmt_tw::Error::Domain(format!(
            "dims must look like 10x40, got '{text}'"
        )))
    };
    let (n, p) = text.trim().split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        n.trim().parse().map_err(|_| bad())?,
        p.trim().parse().map_err(|_| bad())?,
    ))
}

/// A distribution function backed by the cached table in `cache` when given,
/// or by the process-wide default solution.
pub fn load_law(which: TwKind, cache: Option<&Path>) -> CliResult<TwCdf> {
    let solution = match cache {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            Arc::new(load_or_solve(
                dir,
                DEFAULT_S_MIN,
                DEFAULT_S_MAX,
                DEFAULT_TOL,
            )?)
        }
        None => default_solution(),
    };
    Ok(TwCdf::new(which, solution))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwMode {
    Cdf,
    Quantile,
}

/// `F(value)` or `F^{-1}(value)`.
pub fn cmd_tw(law: &TwCdf, mode: TwMode, value: f64) -> CliResult<f64> {
    if !value.is_finite() {
        return Err(CliError::Core(rmt_tw::Error::Domain(format!(
            "value must be finite, got {value}"
        ))));
    }
    Ok(match mode {
        TwMode::Cdf => law.cdf(value),
        TwMode::Quantile => law.quantile(value)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_parse() {
        assert_eq!(parse_dims("5x200").unwrap(), (5, 200));
        assert_eq!(parse_dims(" 10X40 ").unwrap(), (10, 40));
        assert!(parse_dims("10,40").unwrap_err().exit_code() == 2);
    }

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig::new(vec![(5, 5)]);
        assert!(c.validate().is_ok());
        c.reference_quantiles = vec![1.0, 0.0];
        assert!(c.validate().is_err());
        let empty = ExperimentConfig::new(vec![]);
        assert!(empty.validate().is_err());
    }
}
