//! Orthonormal weighted Laguerre functions
//! `φ_k(x) = √(k!/(k+α)!) x^{α/2} e^{-x/2} L_k^α(x)`.
//!
//! The three-term recurrence is run directly on the weighted, normalised
//! functions,
//!
//! ```text
//! √((k+1)(k+1+α)) φ_{k+1} = (2k+α+1−x) φ_k − √(k(k+α)) φ_{k−1},
//! ```
//!
//! with `φ_0` folded into a running log-scale, so neither `L_k^α` nor the
//! factorial normalisation is ever formed. Mantissas are renormalised when
//! they leave `[1e-150, 1e150]`.

use crate::error::{Error, Result};
use crate::specfun::gamma::ln_factorial;

const RESCALE_HIGH: f64 = 1e150;
const RESCALE_LOW: f64 = 1e-150;

/// `φ_k(x)` for `x > 0`.
pub fn weighted_laguerre_phi(k: u64, alpha: u64, x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(phi_pair(k, alpha, x).1)
}

/// `(φ_{k−1}(x), φ_k(x))` with `φ_{−1} ≡ 0`. Caller guarantees `x > 0`.
pub(crate) fn phi_pair(k: u64, alpha: u64, x: f64) -> (f64, f64) {
    let a = alpha as f64;
    let mut log_scale = 0.5 * a * x.ln() - 0.5 * x - 0.5 * ln_factorial(alpha);
    let mut prev = 0.0f64;
    let mut cur = 1.0f64;
    for j in 0..k {
        let jf = j as f64;
        let next = ((2.0 * jf + a + 1.0 - x) * cur - (jf * (jf + a)).sqrt() * prev)
            / ((jf + 1.0) * (jf + 1.0 + a)).sqrt();
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > RESCALE_HIGH || (m < RESCALE_LOW && m > 0.0) {
            prev /= m;
            cur /= m;
            log_scale += m.ln();
        }
    }
    (apply_scale(prev, log_scale), apply_scale(cur, log_scale))
}

fn apply_scale(mantissa: f64, log_scale: f64) -> f64 {
    if mantissa == 0.0 {
        0.0
    } else {
        mantissa.signum() * (log_scale + mantissa.abs().ln()).exp()
    }
}

pub(crate) fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "argument must be finite and > 0, got {x}"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_functions_in_closed_form() {
        // L_0 ≡ 1: φ_0(2) with α = 2 is √(1/2!) · 2 · e^{-1}
        let v = weighted_laguerre_phi(0, 2, 2.0).unwrap();
        assert!((v - 0.5f64.sqrt() * 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        // L_1^0(x) = 1 − x vanishes at x = 1
        assert!(weighted_laguerre_phi(1, 0, 1.0).unwrap().abs() < 1e-16);
        // L_1^α(x) = 1 + α − x
        let (a, x) = (3u64, 1.5f64);
        let direct = (1.0 / 4.0f64).sqrt()
            * (1.0 / 6.0f64).sqrt()
            * x.powf(1.5)
            * (-x / 2.0).exp()
            * (4.0 - x);
        assert!((weighted_laguerre_phi(1, a, x).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_positive_arguments() {
        assert!(weighted_laguerre_phi(3, 1, 0.0).is_err());
        assert!(weighted_laguerre_phi(3, 1, -1.0).is_err());
        assert!(weighted_laguerre_phi(3, 1, f64::NAN).is_err());
    }

    #[test]
    fn large_parameters_stay_finite() {
        // near the upper turning point for n = 10^5, N = 10^3, and far out at 4n
        let (n, p) = (100_000u64, 1_000u64);
        let alpha = n - p;
        let turning = ((n as f64).sqrt() + (p as f64).sqrt()).powi(2);
        let near = weighted_laguerre_phi(p, alpha, turning).unwrap();
        assert!(near.is_finite() && near != 0.0);
        let far = weighted_laguerre_phi(p, alpha, 4.0 * n as f64).unwrap();
        assert!(far.is_finite());
        let big = weighted_laguerre_phi(100_000, 100_000, 400_000.0).unwrap();
        assert!(big.is_finite());
    }

    #[test]
    fn pair_is_consistent_with_single_evaluations() {
        let (prev, cur) = phi_pair(7, 4, 3.3);
        assert_eq!(prev, weighted_laguerre_phi(6, 4, 3.3).unwrap());
        assert_eq!(cur, weighted_laguerre_phi(7, 4, 3.3).unwrap());
    }
}
