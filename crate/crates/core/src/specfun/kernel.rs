//! The `(φ, ψ)` pair built from two consecutive Laguerre functions, the
//! finite-N kernel `S_N` and its rescaled form `S_τ`, `F_N`, and the Airy
//! kernel `S̄`.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::quad::{GaussLegendre, MAX_CACHED_LOG2};
use crate::specfun::airy::airy_pair;
use crate::specfun::laguerre::{check_x, phi_pair};
use crate::specfun::ShapeParams;

/// Half-width of the window around the diagonal where the Airy kernel's
/// divided difference is replaced by its Taylor expansion.
pub const AIRY_KERNEL_SWITCH: f64 = 1e-4;

/// Target error estimate for the semi-infinite kernel integral.
pub const KERNEL_QUAD_TOL: f64 = 1e-9;
const KERNEL_QUAD_START_LOG2: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelEval {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub quadrature_error_estimate: f64,
}

fn parity_sign(p: u64) -> f64 {
    if p.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(φ(x), ψ(x))` with `ξ_k = φ_k / x`:
///
/// ```text
/// φ = (−1)^N √(a_N/2) (√n ξ_N − √N ξ_{N−1})
/// ψ = (−1)^N √(a_N/2) (√N ξ_N − √n ξ_{N−1})
/// ```
///
/// where `n` is [`ShapeParams::n_eff`].
pub fn phi_psi(sp: &ShapeParams, x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    Ok(phi_psi_unchecked(sp, x))
}

fn phi_psi_unchecked(sp: &ShapeParams, x: f64) -> (f64, f64) {
    let (prev, cur) = phi_pair(sp.p, sp.alpha, x);
    let (xi_prev, xi_cur) = (prev / x, cur / x);
    let c = parity_sign(sp.p) * (0.5 * sp.a_n).sqrt();
    let sn = (sp.n_eff() as f64).sqrt();
    let sp_ = (sp.p as f64).sqrt();
    (
        c * (sn * xi_cur - sp_ * xi_prev),
        c * (sp_ * xi_cur - sn * xi_prev),
    )
}

/// `(φ_τ(s), ψ_τ(s)) = σ_N (φ, ψ)(μ_N + σ_N s)`.
pub fn phi_psi_tau(sp: &ShapeParams, s: f64) -> Result<(f64, f64)> {
    ensure_finite("s", s)?;
    let c = sp.centering();
    let z = c.mu + c.sigma * s;
    check_x(z)?;
    let (phi, psi) = phi_psi_unchecked(sp, z);
    Ok((c.sigma * phi, c.sigma * psi))
}

/// `F_N(z) = (−1)^N σ_N^{−1/2} √z φ_N(z)`, i.e.
/// `(−1)^N σ_N^{−1/2} √(N!/n!) z^{(α+1)/2} e^{−z/2} L_N^α(z)`.
pub fn big_f_n(sp: &ShapeParams, z: f64) -> Result<f64> {
    check_x(z)?;
    let sigma = sp.centering().sigma;
    let (_, phi_n) = phi_pair(sp.p, sp.alpha, z);
    Ok(parity_sign(sp.p) * z.sqrt() * phi_n / sigma.sqrt())
}

/// `F_N(μ_N + σ_N s)`.
pub fn big_f_n_scaled(sp: &ShapeParams, s: f64) -> Result<f64> {
    ensure_finite("s", s)?;
    let c = sp.centering();
    big_f_n(sp, c.mu + c.sigma * s)
}

/// Airy kernel `S̄(x, y) = (Ai(x)Ai'(y) − Ai(y)Ai'(x)) / (x − y)`.
pub fn airy_kernel(x: f64, y: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    ensure_finite("y", y)?;
    Ok(airy_kernel_from_values(x, airy_pair(x), y, airy_pair(y)))
}

/// Airy kernel from precomputed `(Ai, Ai')` at both arguments.
pub(crate) fn airy_kernel_from_values(x: f64, ax: (f64, f64), y: f64, ay: (f64, f64)) -> f64 {
    if (x - y).abs() > AIRY_KERNEL_SWITCH {
        (ax.0 * ay.1 - ay.0 * ax.1) / (x - y)
    } else {
        airy_kernel_near_diagonal(x, y)
    }
}

/// Divided difference expanded about the midpoint `m` in `d = (x − y)/2`:
/// `S̄ = c₁ + c₃ d² + c₅ d⁴`, with `c₁ = Ai'(m)² − m Ai(m)²`.
fn airy_kernel_near_diagonal(x: f64, y: f64) -> f64 {
    let m = 0.5 * (x + y);
    let d = 0.5 * (x - y);
    let (a0, a1) = airy_pair(m);
    // f_k = Ai^{(k)}(m); f_{k+2} = k f_{k-1} + m f_k
    let mut f = [0.0f64; 7];
    f[0] = a0;
    f[1] = a1;
    for k in 0..5 {
        let lower = if k >= 1 { k as f64 * f[k - 1] } else { 0.0 };
        f[k + 2] = lower + m * f[k];
    }
    let fact = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0];
    // coefficient of d^j in f(d) f'(-d), j odd
    let coeff = |j: usize| -> f64 {
        (0..=j)
            .map(|i| {
                let sign = if (j - i).is_multiple_of(2) { 1.0 } else { -1.0 };
                f[i] / fact[i] * sign * f[j - i + 1] / fact[j - i]
            })
            .sum()
    };
    let d2 = d * d;
    coeff(1) + d2 * (coeff(3) + d2 * coeff(5))
}

/// `∫_0^∞ Ai(x+u) Ai(y+u) du`, by composite Gauss–Legendre on unit panels
/// up to the point where both factors are below `1e-30`.
pub fn airy_kernel_integral(x: f64, y: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    ensure_finite("y", y)?;
    let upper = (22.0 - x.min(y)).max(1.0);
    let panels = upper.ceil() as usize;
    let rule = GaussLegendre::power_of_two(5);
    let width = upper / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let a = i as f64 * width;
        total += rule.integrate(a, a + width, |u| airy_pair(x + u).0 * airy_pair(y + u).0);
    }
    Ok(total)
}

/// `S_N(x, y) = ∫_0^∞ φ(x+z)ψ(y+z) + ψ(x+z)φ(y+z) dz`, or, with `scaled`,
/// `S_τ(x, y) = σ_N S_N(μ_N + σ_N x, μ_N + σ_N y)`.
///
/// The half-line is mapped onto `(0, 1]` by `z = −2c log u` (`c = 1` in the
/// scaled variable, `c = σ_N` in the unscaled one) and integrated with
/// Gauss–Legendre rules of doubling size until consecutive estimates differ
/// by at most [`KERNEL_QUAD_TOL`] (relative to `max(1, |S|)`).
pub fn laguerre_kernel(sp: &ShapeParams, x: f64, y: f64, scaled: bool) -> Result<KernelEval> {
    ensure_finite("x", x)?;
    ensure_finite("y", y)?;
    let centering = sp.centering();
    let (mu, sigma) = (centering.mu, centering.sigma);
    let lo = x.min(y);
    if scaled {
        if mu + sigma * lo <= 0.0 {
            return Err(Error::domain(format!(
                "mu_N + sigma_N * min(x, y) must be > 0 (min = {lo})"
            )));
        }
    } else if lo <= 0.0 {
        return Err(Error::domain(format!(
            "kernel arguments must be > 0, got ({x}, {y})"
        )));
    }

    // the scaled kernel is σ² times the pair integral in the σ-stretched variable
    let (length, prefactor) = if scaled {
        (1.0, sigma * sigma)
    } else {
        (sigma, 1.0)
    };
    let to_z = |t: f64| if scaled { mu + sigma * t } else { t };
    let integrand = |t: f64| -> f64 {
        let (px, qx) = phi_psi_unchecked(sp, to_z(x + t));
        let (py, qy) = phi_psi_unchecked(sp, to_z(y + t));
        px * qy + qx * py
    };

    let mut previous: Option<f64> = None;
    for log2 in KERNEL_QUAD_START_LOG2..=MAX_CACHED_LOG2 {
        let rule = GaussLegendre::power_of_two(log2);
        let mut total = 0.0;
        for (u, w) in rule.mapped(0.0, 1.0) {
            let t = -2.0 * length * u.ln();
            total += w * 2.0 * length / u * integrand(t);
        }
        let value = prefactor * total;
        if let Some(prev) = previous {
            let err = (value - prev).abs();
            if err <= KERNEL_QUAD_TOL * value.abs().max(1.0) {
                return Ok(KernelEval {
                    x,
                    y,
                    value,
                    quadrature_error_estimate: err,
                });
            }
            if log2 == MAX_CACHED_LOG2 {
                return Err(Error::numeric(
                    format!("kernel quadrature did not converge at ({x}, {y}); last error {err:e}"),
                    Some(value),
                ));
            }
        }
        previous = Some(value);
    }
    unreachable!("loop returns on its last iteration")
}
