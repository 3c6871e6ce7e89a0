use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{ln_factorial, ln_gamma};

/// `I_{N,α}`, `v_{N,α}` and `√2 c_φ` for even `N`. `i` and `v` may
/// overflow to `+∞` for large `α`; their logarithms are always finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CphiResult {
    pub n_cols: u64,
    pub alpha: u64,
    pub ln_i: f64,
    pub ln_v: f64,
    pub i: f64,
    pub v: f64,
    pub sqrt2_cphi: f64,
}

/// `ln I_{k,α} = (α/2) ln 2 + ln Γ((α+k)/2) − ln (k/2)!` for even `k`.
pub fn ln_i_closed_form(k: u64, alpha: u64) -> Result<f64> {
    if !k.is_multiple_of(2) {
        return Err(Error::domain(format!("k must be even, got {k}")));
    }
    if alpha == 0 {
        return Err(Error::domain("alpha must be >= 1"));
    }
    Ok(
        0.5 * alpha as f64 * std::f64::consts::LN_2 + ln_gamma(0.5 * (alpha + k) as f64)
            - ln_factorial(k / 2),
    )
}

/// `√2 c_φ = v_{N,α} √(a_N) / 2` with `v = √(N!/(N+α−1)!) I_{N,α}` and
/// `a_N = √(N (N+α))`.
pub fn cphi_closed_form(n_cols: u64, alpha: u64) -> Result<CphiResult> {
    if n_cols < 2 || !n_cols.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "N must be even and >= 2, got {n_cols}"
        )));
    }
    if alpha < 2 {
        return Err(Error::domain(format!("alpha must be >= 2, got {alpha}")));
    }
    let ln_i = ln_i_closed_form(n_cols, alpha)?;
    let ln_v = 0.5 * (ln_factorial(n_cols) - ln_factorial(n_cols + alpha - 1)) + ln_i;
    let (nf, af) = (n_cols as f64, alpha as f64);
    let ln_a_n = 0.5 * (nf * (nf + af)).ln();
    Ok(CphiResult {
        n_cols,
        alpha,
        ln_i,
        ln_v,
        i: ln_i.exp(),
        v: ln_v.exp(),
        sqrt2_cphi: (ln_v + 0.5 * ln_a_n - std::f64::consts::LN_2).exp(),
    })
}
