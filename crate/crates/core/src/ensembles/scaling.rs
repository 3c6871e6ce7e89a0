use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which centering/scaling sequence to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `n₁ = max(n, p) − 1`, `p₁ = min(n, p)`.
    Original,
    /// Half-integer shifts `n − 1/2`, `p − 1/2`.
    Adjusted,
    /// `n + 1/2`, `p + 1/2`, the form used for the Laguerre kernel rescaling.
    PlusHalf,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Original => "original",
            Variant::Adjusted => "adjusted",
            Variant::PlusHalf => "plus-half",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "original" => Ok(Variant::Original),
            "adjusted" => Ok(Variant::Adjusted),
            "plus-half" => Ok(Variant::PlusHalf),
            other => Err(Error::Parse(format!("unknown scaling variant '{other}'"))),
        }
    }
}

/// A center and scale for standardizing the largest eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingPair {
    pub mu: f64,
    pub sigma: f64,
    pub variant: Variant,
    pub n: u64,
    pub p: u64,
}

impl ScalingPair {
    pub fn standardize(&self, l: f64) -> f64 {
        (l - self.mu) / self.sigma
    }
}

/// `μ = (√a + √b)²` and `σ = (√a + √b)(1/√a + 1/√b)^{1/3}` where `(a, b)`
/// are the shifted dimensions of the chosen variant.
pub fn scaling(n: u64, p: u64, variant: Variant) -> Result<ScalingPair> {
    if n == 0 || p == 0 {
        return Err(Error::domain(format!(
            "n and p must be >= 1, got n={n}, p={p}"
        )));
    }
    let (nf, pf) = (n as f64, p as f64);
    let (a, b) = match variant {
        Variant::Original => (nf.max(pf) - 1.0, nf.min(pf)),
        Variant::Adjusted => (nf - 0.5, pf - 0.5),
        Variant::PlusHalf => (nf + 0.5, pf + 0.5),
    };
    if a <= 0.0 || b <= 0.0 {
        return Err(Error::domain(format!(
            "{variant} scaling needs max(n, p) >= 2 (n={n}, p={p})"
        )));
    }
    let (ra, rb) = (a.sqrt(), b.sqrt());
    let sum = ra + rb;
    Ok(ScalingPair {
        mu: sum * sum,
        sigma: sum * (1.0 / ra + 1.0 / rb).cbrt(),
        variant,
        n,
        p,
    })
}
