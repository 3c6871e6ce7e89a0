use std::path::Path;

use serde::Serialize;

use rmt_tw::ensembles::data_top_k;
use rmt_tw::{scaling, TwCdf, Variant};

use crate::{CliError, CliResult};

/// Column variances further than this from 1 (relative) draw a warning.
pub const VARIANCE_WARN_TOL: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PcaReport {
    pub n: usize,
    pub p: usize,
    pub l1: f64,
    pub variant: Variant,
    pub mu: f64,
    pub sigma: f64,
    pub s: f64,
    pub p_value: f64,
    pub warnings: Vec<String>,
}

/// Reads a dense numeric CSV, one observation per row. A first row that is
/// not entirely numeric is taken as a header.
pub fn read_matrix(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(csv_error)?;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if i == 0 => continue,
            Err(e) => return Err(CliError::Input(format!("row {}: {e}", i + 1))),
        }
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!(
            "{} contains no data rows",
            path.display()
        )));
    }
    if rows.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::Input("matrix entries must be finite".into()));
    }
    Ok(rows)
}

fn csv_error(e: csv::Error) -> CliError {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::Io(io),
            other => CliError::Input(format!("{other:?}")),
        }
    } else {
        CliError::Input(e.to_string())
    }
}

fn column_variance_warnings(rows: &[Vec<f64>]) -> Vec<String> {
    let n = rows.len() as f64;
    let p = rows[0].len();
    let off: Vec<usize> = (0..p)
        .filter(|&j| {
            let mean = rows.iter().map(|r| r[j]).sum::<f64>() / n;
            let var = rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var - 1.0).abs() > VARIANCE_WARN_TOL
        })
        .collect();
    if off.is_empty() {
        return Vec::new();
    }
    vec![format!(
        "{} of {p} column variances deviate from 1 by more than {:.0}%; the null model assumes unit variance (first offending column: {})",
        off.len(),
        VARIANCE_WARN_TOL * 100.0,
        off[0]
    )]
}

/// Largest-eigenvalue test of the white null: `s = (l₁ − μ)/σ` and the
/// p-value `1 − F1(s)`.
pub fn cmd_pca_test(path: &Path, variant: Variant, tw1: &TwCdf) -> CliResult<PcaReport> {
    let rows = read_matrix(path)?;
    let (n, p) = (rows.len(), rows[0].len());
    if let Some(i) = rows.iter().position(|r| r.len() != p) {
        return Err(CliError::Input(format!(
            "ragged input: row {} has {} entries, expected {p}",
            i + 1,
            rows[i].len()
        )));
    }
    if n < 2 {
        return Err(CliError::Core(rmt_tw::Error::Domain(format!(
            "need at least 2 observations, got {n}"
        ))));
    }
    let l1 = data_top_k(&rows, 1)?[0];
    let scale = scaling(n as u64, p as u64, variant)?;
    let s = scale.standardize(l1);
    Ok(PcaReport {
        n,
        p,
        l1,
        variant,
        mu: scale.mu,
        sigma: scale.sigma,
        s,
        p_value: 1.0 - tw1.cdf(s),
        warnings: column_variance_warnings(&rows),
    })
}
