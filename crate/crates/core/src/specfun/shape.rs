use serde::{Deserialize, Serialize};

use crate::ensembles::{scaling, ScalingPair, Variant};
use crate::error::{Error, Result};

/// Which Laguerre parameter convention an `(n, N)` geometry uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `α = n − N`.
    Complex,
    /// `α = n − 1 − N`; complex-case formulas then apply with `n − 1` in
    /// place of `n`.
    Real,
}

/// The `(n, N)` geometry of an `n × N` data matrix and the spectral
/// parameters derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeParams {
    /// Row count of `X`.
    pub n: u64,
    /// Column count `N` (the smaller dimension).
    pub p: u64,
    pub convention: Convention,
    /// Laguerre parameter `α`.
    pub alpha: u64,
    /// `κ = N + (α + 1)/2`.
    pub kappa: f64,
    /// `λ = α / 2`.
    pub lambda: f64,
    /// `l = κ / λ`.
    pub l: f64,
    /// `β = √(2(l − 1))`.
    pub beta: f64,
    /// Turning points `2l ∓ 2√(l² − 1)`.
    pub x1: f64,
    pub x2: f64,
    /// `a_N = √(N (N + α))`.
    pub a_n: f64,
}

impl ShapeParams {
    pub fn new(n: u64, p: u64, convention: Convention) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("N must be at least 1"));
        }
        let offset = match convention {
            Convention::Complex => 0,
            Convention::Real => 1,
        };
        let alpha = n
            .checked_sub(p + offset)
            .filter(|&a| a >= 1)
            .ok_or_else(|| {
                Error::domain(format!(
                    "alpha must be >= 1 (n={n}, N={p}, {convention:?} convention)"
                ))
            })?;
        let pf = p as f64;
        let af = alpha as f64;
        let kappa = pf + (af + 1.0) / 2.0;
        let lambda = af / 2.0;
        let l = kappa / lambda;
        // l - 1 = (2N + 1) / α exactly; avoids cancellation when α ≫ N
        let l_minus_one = (2.0 * pf + 1.0) / af;
        let beta = (2.0 * l_minus_one).sqrt();
        let root = (l_minus_one * (l + 1.0)).sqrt();
        let x1 = 2.0 * l - 2.0 * root;
        let x2 = 2.0 * l + 2.0 * root;
        let a_n = (pf * (pf + af)).sqrt();
        Ok(Self {
            n,
            p,
            convention,
            alpha,
            kappa,
            lambda,
            l,
            beta,
            x1,
            x2,
            a_n,
        })
    }

    /// `N + α`: the row count the complex-case formulas see.
    pub fn n_eff(&self) -> u64 {
        self.p + self.alpha
    }

    /// Centering and scaling `(μ_N, σ_N)` built from `N + 1/2` and
    /// `(N + α) + 1/2`.
    pub fn centering(&self) -> ScalingPair {
        scaling(self.n_eff(), self.p, Variant::PlusHalf)
            .expect("section-4 scaling is defined for every valid shape")
    }
}
