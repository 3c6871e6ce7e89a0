//! `F2(s) = det(I − S̄)` on `L²(s, ∞)` by Nyström discretization.

use nalgebra::{Cholesky, DMatrix};

use crate::error::{ensure_finite, Error, Result};
use crate::quad::GaussLegendre;
use crate::specfun::{airy_kernel_from_values, airy_pair};

/// Truncation point: `Ai(x) < 1e-9` (so `Ai² < 1e-18`) for `x` beyond it.
pub(crate) fn truncation_point() -> f64 {
    let (mut a, mut b) = (5.0, 15.0);
    while b - a > 1e-10 {
        let mid = 0.5 * (a + b);
        if airy_pair(mid).0 < 1e-9 {
            b = mid;
        } else {
            a = mid;
        }
    }
    b
}

/// Successive determinants whose difference counts as converged.
pub const FREDHOLM_TOL: f64 = 1e-10;
const MIN_NODES: usize = 16;
const MAX_NODES: usize = 512;

/// `det(I − W^{1/2} K W^{1/2})` with `m` Gauss–Legendre nodes on
/// `[s, s + T]`.
pub fn fredholm_det(s: f64, m: usize) -> f64 {
    let upper = truncation_point().max(s + 2.0);
    let rule = GaussLegendre::new(m);
    let points: Vec<(f64, f64)> = rule.mapped(s, upper).collect();
    let airy: Vec<(f64, f64)> = points.iter().map(|&(x, _)| airy_pair(x)).collect();
    let root_w: Vec<f64> = points.iter().map(|&(_, w)| w.sqrt()).collect();
    let a = DMatrix::from_fn(m, m, |i, j| {
        let k = airy_kernel_from_values(points[i].0, airy[i], points[j].0, airy[j]);
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - root_w[i] * k * root_w[j]
    });
    match Cholesky::new(a.clone()) {
        Some(c) => c.l().diagonal().iter().map(|d| d * d).product(),
        None => a.determinant(),
    }
}

/// `F2(s)` by doubling the node count from 16 up to `nodes` until two
/// successive determinants agree to [`FREDHOLM_TOL`].
pub fn fredholm_f2(s: f64, nodes: usize) -> Result<f64> {
    ensure_finite("s", s)?;
    if !(-10.0..=6.0).contains(&s) {
        return Err(Error::domain(format!("s must lie in [-10, 6], got {s}")));
    }
    if !nodes.is_power_of_two() || !(MIN_NODES..=MAX_NODES).contains(&nodes) {
        return Err(Error::domain(format!(
            "nodes must be a power of two in [{MIN_NODES}, {MAX_NODES}], got {nodes}"
        )));
    }
    let mut m = MIN_NODES / 2;
    let mut previous = fredholm_det(s, m);
    while m < nodes {
        m *= 2;
        let current = fredholm_det(s, m);
        if (current - previous).abs() <= FREDHOLM_TOL {
            return Ok(current);
        }
        previous = current;
        if m == nodes {
            return Err(Error::numeric(
                format!(
                    "Fredholm determinant at s = {s} not converged: {previous} ({} nodes), {current} ({m} nodes)",
                    m / 2
                ),
                Some(current),
            ));
        }
    }
    unreachable!("loop exits through a return")
}
