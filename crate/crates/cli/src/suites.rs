use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::{json, Value};

use rmt_tw::specfun::{Convention, ShapeParams};
use rmt_tw::verify::{
    check_identities, cphi_closed_form, f_n_convergence, kernel_convergence, pair_grid,
    phi_derivative_convergence, phi_tau_convergence, s_grid, ConvergenceReport, MetricKind,
    DEFAULT_SCHEDULE,
};

use crate::{CliError, CliResult};

pub const CPHI_SCHEDULE: [u64; 3] = [10, 40, 160];
pub const KERNEL_POINTS: [f64; 6] = [-3.0, -1.0, 0.0, 1.0, 3.0, 5.0];
const IDENTITY_PAIRS: usize = 200;
const IDENTITY_SEED: u64 = 1;
const IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Cphi,
    Convergence,
    Kernels,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Cphi => "cphi",
            Suite::Convergence => "convergence",
            Suite::Kernels => "kernels",
        })
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "cphi" => Ok(Suite::Cphi),
            "convergence" => Ok(Suite::Convergence),
            "kernels" => Ok(Suite::Kernels),
            other => Err(CliError::Core(rmt_tw::Error::Domain(format!(
                "unknown suite '{other}'"
            )))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub passed: bool,
    pub failing: Vec<String>,
    pub report: Value,
}

fn outcome(suite: Suite, reports: Vec<ConvergenceReport>, extra: Value) -> SuiteOutcome {
    let failing = reports
        .iter()
        .filter(|r| !r.verdict.passed())
        .map(|r| r.metric.clone())
        .collect::<Vec<_>>();
    SuiteOutcome {
        suite,
        passed: failing.is_empty(),
        failing,
        report: json!({ "metrics": reports, "details": extra }),
    }
}

/// `(n, N)` log-uniform with `2 ≤ N ≤ n − 2`, `n ≤ 10^6`.
pub(crate) fn random_pairs(count: usize, seed: u64) -> Vec<(u64, u64)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = (10f64.powf(rng.random_range(0.6f64..6.0)).round() as u64).clamp(4, 1_000_000);
            let hi = ((n - 2) as f64).log10();
            let p = (10f64.powf(rng.random_range(0.3f64..=hi)).round() as u64).clamp(2, n - 2);
            (n, p)
        })
        .collect()
}

fn identities() -> CliResult<SuiteOutcome> {
    let mut worst: f64 = 0.0;
    let mut worst_pair = (0, 0);
    for (n, p) in random_pairs(IDENTITY_PAIRS, IDENTITY_SEED) {
        for conv in [Convention::Complex, Convention::Real] {
            let d = check_identities(&ShapeParams::new(n, p, conv)?).max_deviation();
            if d > worst {
                worst = d;
                worst_pair = (n, p);
            }
        }
    }
    let passed = worst <= IDENTITY_TOL;
    Ok(SuiteOutcome {
        suite: Suite::Identities,
        passed,
        failing: if passed {
            vec![]
        } else {
            vec![format!("identities at {worst_pair:?}")]
        },
        report: json!({
            "pairs": IDENTITY_PAIRS,
            "max_relative_deviation": worst,
            "worst_pair": worst_pair,
            "tolerance": IDENTITY_TOL,
        }),
    })
}

fn cphi() -> CliResult<SuiteOutcome> {
    let results = CPHI_SCHEDULE
        .iter()
        .map(|&n| cphi_closed_form(n, n * n - n - 1))
        .collect::<rmt_tw::Result<Vec<_>>>()?;
    let gaps = results.iter().map(|r| (r.sqrt2_cphi - 1.0).abs()).collect();
    let schedule = CPHI_SCHEDULE.iter().map(|&n| (n * n, n)).collect();
    let report = ConvergenceReport::new(
        "sqrt2_cphi_gap",
        MetricKind::Decreasing,
        schedule,
        gaps,
        0.0,
    );
    let mut out = outcome(
        Suite::Cphi,
        vec![report.clone()],
        json!({ "results": results }),
    );
    if !report.strictly_decreasing() && out.passed {
        out.passed = false;
        out.failing.push(report.metric);
    }
    Ok(out)
}

fn convergence() -> CliResult<SuiteOutcome> {
    let phi_grid = s_grid(-5.0, 20.0, 0.25);
    let f_grid = s_grid(-5.0, 30.0, 0.25);
    let mut reports = phi_tau_convergence(&DEFAULT_SCHEDULE, &phi_grid)?;
    reports.extend(f_n_convergence(&DEFAULT_SCHEDULE, &f_grid)?);
    reports.extend(phi_derivative_convergence(&DEFAULT_SCHEDULE, &phi_grid)?);
    Ok(outcome(
        Suite::Convergence,
        reports,
        json!({ "phi_grid": [-5.0, 20.0, 0.25], "f_n_grid": [-5.0, 30.0, 0.25] }),
    ))
}

fn kernels() -> CliResult<SuiteOutcome> {
    let report = kernel_convergence(&DEFAULT_SCHEDULE, &pair_grid(&KERNEL_POINTS))?;
    Ok(outcome(
        Suite::Kernels,
        vec![report],
        json!({ "points": KERNEL_POINTS }),
    ))
}

/// Runs one suite on its default schedule. `passed` is true iff every
/// verdict passes.
pub fn cmd_verify(suite: Suite) -> CliResult<SuiteOutcome> {
    match suite {
        Suite::Identities => identities(),
        Suite::Cphi => cphi(),
        Suite::Convergence => convergence(),
        Suite::Kernels => kernels(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_pairs_are_in_range() {
        for (n, p) in random_pairs(500, 3) {
            assert!(2 <= p && p + 2 <= n && n <= 1_000_000, "({n},{p})");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [
            Suite::Identities,
            Suite::Cphi,
            Suite::Convergence,
            Suite::Kernels,
        ] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("nope".parse::<Suite>().unwrap_err().exit_code(), 2);
    }
}
