use serde::{Deserialize, Serialize};

use crate::ensembles::{scaling, Variant};
use crate::error::Result;
use crate::specfun::{ln_factorial, ln_gamma, ShapeParams};

/// Relative deviations of the exact identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: u64,
    pub p: u64,
    /// `(λβ² − (2N+1)) / (2N+1)`.
    pub lambda_beta2: f64,
    /// `(κ/μ − λ²/μ² − 1/4) / (1/4)`.
    pub kappa_mu: f64,
    /// `(x1 x2 − 4) / 4`.
    pub vieta_product: f64,
    /// `(x1 + x2 − 4l) / 4l`.
    pub vieta_sum: f64,
}

impl IdentityReport {
    pub fn max_deviation(&self) -> f64 {
        [
            self.lambda_beta2,
            self.kappa_mu,
            self.vieta_product,
            self.vieta_sum,
        ]
        .iter()
        .map(|d| d.abs())
        .fold(0.0, f64::max)
    }
}

pub fn check_identities(sp: &ShapeParams) -> IdentityReport {
    let target = 2.0 * sp.p as f64 + 1.0;
    let mu = sp.centering().mu;
    let quarter = sp.kappa / mu - sp.lambda * sp.lambda / (mu * mu);
    IdentityReport {
        n: sp.n,
        p: sp.p,
        lambda_beta2: (sp.lambda * sp.beta * sp.beta - target) / target,
        kappa_mu: (quarter - 0.25) / 0.25,
        vieta_product: (sp.x1 * sp.x2 - 4.0) / 4.0,
        vieta_sum: (sp.x1 + sp.x2 - 4.0 * sp.l) / (4.0 * sp.l),
    }
}

/// `K_{n,N} / (2^{2/3} (N/n)^{1/4})`, with `K_{n,N}` assembled from its
/// defining product in log form (complex convention, `α = n − N`).
pub fn k_ratio(sp: &ShapeParams) -> f64 {
    let (lam, beta) = (sp.lambda, sp.beta);
    let lb2 = lam * beta * beta;
    let sigma = sp.centering().sigma;
    let ln_k = 0.25 * (2.0 * lam).ln()
        + lam * (1.0 + beta * beta / 4.0) * ((lam * (2.0 + beta * beta / 2.0)).ln() - 1.0)
        + 0.5 * std::f64::consts::LN_2
        + 0.25 * std::f64::consts::PI.ln()
        + 0.5 * ln_gamma((1.0 + lb2) / 2.0)
        + 0.5 * beta.ln()
        - lb2.ln() / 12.0
        - 0.5 * (ln_factorial(sp.n_eff()) + ln_factorial(sp.p) + sigma.ln());
    let n = sp.n_eff() as f64;
    let p = sp.p as f64;
    (ln_k - (2.0 / 3.0) * std::f64::consts::LN_2 - 0.25 * (p / n).ln()).exp()
}

/// `(μ_{n,N} − μ_{n,N−1}) / σ_{n,N}` with the original sequences.
pub fn centering_difference_ratio(n: u64, p: u64) -> Result<f64> {
    let upper = scaling(n, p, Variant::Original)?;
    let lower = scaling(n, p - 1, Variant::Original)?;
    Ok((upper.mu - lower.mu) / upper.sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::Convention;

    #[test]
    fn identities_hold_at_small_shape() {
        let sp = ShapeParams::new(100, 10, Convention::Complex).unwrap();
        assert!(check_identities(&sp).max_deviation() <= 1e-12);
    }

    #[test]
    fn centering_difference_shrinks_like_cube_root() {
        let a = centering_difference_ratio(10_000, 100).unwrap();
        let b = centering_difference_ratio(10_000, 400).unwrap();
        assert!(b < a);
        let target = 4f64.powf(-1.0 / 3.0);
        assert!(((b / a) - target).abs() <= 0.25 * target, "{}", b / a);
    }
}
