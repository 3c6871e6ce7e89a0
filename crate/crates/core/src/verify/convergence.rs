//! Convergence diagnostics of the rescaled Laguerre quantities toward their
//! Airy limits along a refinement schedule of `(n, N)` shapes.

use std::f64::consts::FRAC_1_SQRT_2;

use super::report::{ConvergenceReport, MetricKind};
use crate::error::{Error, Result};
use crate::specfun::{
    airy_kernel, airy_pair, big_f_n_scaled, laguerre_kernel, phi_psi_tau, Convention, ShapeParams,
};

/// `n = N²` for `N ∈ {20, 40, 80}`.
pub const DEFAULT_SCHEDULE: [(u64, u64); 3] = [(400, 20), (1600, 40), (6400, 80)];
/// Shared constant for the exponential-bound metrics.
pub const BOUND: f64 = 10.0;
/// Finite-difference step in the rescaled variable (`10⁻³ σ_N` in `z`).
pub const DERIVATIVE_STEP: f64 = 1e-3;

/// Uniform grid `start, start + step, …` up to and including `end`.
pub fn s_grid(start: f64, end: f64, step: f64) -> Vec<f64> {
    let count = ((end - start) / step).round() as usize;
    (0..=count).map(|i| start + i as f64 * step).collect()
}

/// Pairs `{a, b}²` for `a, b` in the given values.
pub fn pair_grid(values: &[f64]) -> Vec<(f64, f64)> {
    values
        .iter()
        .flat_map(|&x| values.iter().map(move |&y| (x, y)))
        .collect()
}

fn shape(n: u64, p: u64) -> Result<ShapeParams> {
    ShapeParams::new(n, p, Convention::Complex)
}

fn at_point(e: Error, n: u64, p: u64, s: f64) -> Error {
    let context = format!("(n={n}, N={p}, s={s})");
    match e {
        Error::Domain(m) => Error::Domain(format!("{context}: {m}")),
        Error::Numeric { message, estimate } => Error::Numeric {
            message: format!("{context}: {message}"),
            estimate,
        },
        other => other,
    }
}

/// `max_s` of `f(sp, s)` for every schedule point.
fn sweep<F>(schedule: &[(u64, u64)], grid: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(&ShapeParams, f64) -> Result<f64>,
{
    schedule
        .iter()
        .map(|&(n, p)| {
            let sp = shape(n, p)?;
            grid.iter().try_fold(0.0f64, |acc, &s| {
                f(&sp, s)
                    .map(|v| acc.max(v))
                    .map_err(|e| at_point(e, n, p, s))
            })
        })
        .collect()
}

fn airy_over_root2(s: f64) -> f64 {
    airy_pair(s).0 * FRAC_1_SQRT_2
}

/// Sup-error of `φ_τ` and `ψ_τ` against `Ai/√2`, and the bounds
/// `max e^{s/2}|φ_τ|`, `max e^{s/2}|ψ_τ|`.
pub fn phi_tau_convergence(
    schedule: &[(u64, u64)],
    grid: &[f64],
) -> Result<Vec<ConvergenceReport>> {
    let mut reports = Vec::with_capacity(4);
    for (name, pick) in [("phi_tau", 0usize), ("psi_tau", 1usize)] {
        let component = move |sp: &ShapeParams, s: f64| -> Result<f64> {
            let pair = phi_psi_tau(sp, s)?;
            Ok(if pick == 0 { pair.0 } else { pair.1 })
        };
        let err = sweep(schedule, grid, |sp, s| {
            Ok((component(sp, s)? - airy_over_root2(s)).abs())
        })?;
        let bound = sweep(schedule, grid, |sp, s| {
            Ok((0.5 * s).exp() * component(sp, s)?.abs())
        })?;
        reports.push(ConvergenceReport::new(
            format!("{name}_sup_error"),
            MetricKind::Decreasing,
            schedule.to_vec(),
            err,
            0.0,
        ));
        reports.push(ConvergenceReport::new(
            format!("{name}_exp_bound"),
            MetricKind::Bounded,
            schedule.to_vec(),
            bound,
            BOUND,
        ));
    }
    Ok(reports)
}

/// Sup-error of `F_N(μ_N + σ_N s)` against `Ai(s)` and the bound
/// `max e^{s}|F_N|`.
pub fn f_n_convergence(schedule: &[(u64, u64)], grid: &[f64]) -> Result<Vec<ConvergenceReport>> {
    let err = sweep(schedule, grid, |sp, s| {
        Ok((big_f_n_scaled(sp, s)? - airy_pair(s).0).abs())
    })?;
    let bound = sweep(schedule, grid, |sp, s| {
        Ok(s.exp() * big_f_n_scaled(sp, s)?.abs())
    })?;
    Ok(vec![
        ConvergenceReport::new(
            "f_n_sup_error",
            MetricKind::Decreasing,
            schedule.to_vec(),
            err,
            0.0,
        ),
        ConvergenceReport::new(
            "f_n_exp_bound",
            MetricKind::Bounded,
            schedule.to_vec(),
            bound,
            BOUND,
        ),
    ])
}

/// `σ_N² φ'(μ_N + σ_N s)`, i.e. `dφ_τ/ds`, by a central difference.
pub fn phi_tau_derivative(sp: &ShapeParams, s: f64) -> Result<f64> {
    let h = DERIVATIVE_STEP;
    let plus = phi_psi_tau(sp, s + h)?.0;
    let minus = phi_psi_tau(sp, s - h)?.0;
    Ok((plus - minus) / (2.0 * h))
}

/// Sup-error of `σ_N² φ'` against `Ai'/√2` and the bound
/// `max e^{s/4}|σ_N² φ'|`.
pub fn phi_derivative_convergence(
    schedule: &[(u64, u64)],
    grid: &[f64],
) -> Result<Vec<ConvergenceReport>> {
    let err = sweep(schedule, grid, |sp, s| {
        Ok((phi_tau_derivative(sp, s)? - airy_pair(s).1 * FRAC_1_SQRT_2).abs())
    })?;
    let bound = sweep(schedule, grid, |sp, s| {
        Ok((0.25 * s).exp() * phi_tau_derivative(sp, s)?.abs())
    })?;
    Ok(vec![
        ConvergenceReport::new(
            "phi_derivative_sup_error",
            MetricKind::Decreasing,
            schedule.to_vec(),
            err,
            0.0,
        ),
        ConvergenceReport::new(
            "phi_derivative_exp_bound",
            MetricKind::Bounded,
            schedule.to_vec(),
            bound,
            BOUND,
        ),
    ])
}

/// `|S_τ(x, y) − S̄(x, y)|` on each pair, per schedule point.
pub fn kernel_error_field(sp: &ShapeParams, pairs: &[(f64, f64)]) -> Result<Vec<f64>> {
    pairs
        .iter()
        .map(|&(x, y)| {
            let st = laguerre_kernel(sp, x, y, true).map_err(|e| at_point(e, sp.n, sp.p, x))?;
            Ok((st.value - airy_kernel(x, y)?).abs())
        })
        .collect()
}

/// Sup over `pairs` of `|S_τ − S̄|`.
pub fn kernel_convergence(
    schedule: &[(u64, u64)],
    pairs: &[(f64, f64)],
) -> Result<ConvergenceReport> {
    let values = schedule
        .iter()
        .map(|&(n, p)| {
            let sp = shape(n, p)?;
            Ok(kernel_error_field(&sp, pairs)?
                .into_iter()
                .fold(0.0, f64::max))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(ConvergenceReport::new(
        "kernel_sup_error",
        MetricKind::Decreasing,
        schedule.to_vec(),
        values,
        0.0,
    ))
}
