use std::fmt::Write as _;

use serde::Serialize;

use rmt_tw::ensembles::sample_batch;
use rmt_tw::tw::painleve::INTEGRATOR_VERSION;
use rmt_tw::{scaling, EmpiricalCdf, SampleConfig, TwCdf};

use crate::{CliResult, ExperimentConfig};

/// One dimension pair: its empirical CDF at the reference quantiles, or the
/// reason it could not be run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableColumn {
    pub n: u64,
    pub p: u64,
    pub values: Option<Vec<f64>>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableArtifact {
    pub config: ExperimentConfig,
    pub law: rmt_tw::TwKind,
    pub reference: Vec<f64>,
    pub columns: Vec<TableColumn>,
}

fn run_column(config: &ExperimentConfig, n: u64, p: u64) -> rmt_tw::Result<Vec<f64>> {
    let sample = SampleConfig::new(n, p, 1, config.field, config.path())?;
    let scale = scaling(n, p, config.variant)?;
    let draws = sample_batch(&sample, config.seed, config.reps, config.workers)?;
    let ecdf = EmpiricalCdf::from_samples(&draws, &scale)?;
    Ok(config
        .reference_quantiles
        .iter()
        .map(|&t| ecdf.eval(t))
        .collect())
}

/// Simulates every column of the table. A column that cannot be run records
/// its error; the others still proceed.
pub fn cmd_table(config: &ExperimentConfig, law: &TwCdf) -> CliResult<TableArtifact> {
    config.validate()?;
    let reference = config
        .reference_quantiles
        .iter()
        .map(|&s| law.cdf(s))
        .collect();
    let columns = config
        .dims
        .iter()
        .map(|&(n, p)| match run_column(config, n, p) {
            Ok(values) => TableColumn {
                n,
                p,
                values: Some(values),
                error: None,
            },
            Err(e) => TableColumn {
                n,
                p,
                values: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    Ok(TableArtifact {
        config: config.clone(),
        law: law.which,
        reference,
        columns,
    })
}

impl TableArtifact {
    /// `quantile,tw,<n>x<p>,...`; failed columns print `NA`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("quantile,tw");
        for c in &self.columns {
            write!(out, ",{}x{}", c.n, c.p).unwrap();
        }
        out.push('\n');
        for (row, (&q, &tw)) in self
            .config
            .reference_quantiles
            .iter()
            .zip(&self.reference)
            .enumerate()
        {
            write!(out, "{q},{tw:.6}").unwrap();
            for c in &self.columns {
                match &c.values {
                    Some(v) => write!(out, ",{:.6}", v[row]).unwrap(),
                    None => out.push_str(",NA"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// Config, column errors and versions; no timestamps, so it is as
    /// reproducible as the CSV.
    pub fn sidecar(&self) -> serde_json::Value {
        serde_json::json!({
            "config": self.config,
            "law": self.law,
            "path": self.config.path(),
            "columns": self.columns.iter().map(|c| serde_json::json!({
                "dims": format!("{}x{}", c.n, c.p),
                "error": c.error,
            })).collect::<Vec<_>>(),
            "versions": {
                "rmt-tw": env!("CARGO_PKG_VERSION"),
                "integrator": INTEGRATOR_VERSION,
            },
        })
    }

    pub fn column(&self, n: u64, p: u64) -> Option<&TableColumn> {
        self.columns.iter().find(|c| (c.n, c.p) == (n, p))
    }
}
