use serde::{Deserialize, Serialize};

use super::{EigenSample, ScalingPair};
use crate::error::{Error, Result};

/// Sorted standardized largest eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalCdf {
    pub standardized: Vec<f64>,
    pub count: usize,
}

impl EmpiricalCdf {
    /// Standardizes `l₁` of every sample by `scale`.
    pub fn from_samples(samples: &[EigenSample], scale: &ScalingPair) -> Result<Self> {
        let first = samples
            .first()
            .ok_or_else(|| Error::domain("empirical CDF needs at least one sample"))?;
        if let Some(bad) = samples.iter().find(|s| (s.n, s.p) != (first.n, first.p)) {
            return Err(Error::domain(format!(
                "mixed shapes: {}x{} and {}x{}",
                first.n, first.p, bad.n, bad.p
            )));
        }
        Self::from_values(
            samples
                .iter()
                .map(|s| scale.standardize(s.top[0]))
                .collect(),
        )
    }

    pub fn from_values(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("empirical CDF needs at least one value"));
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::domain("empirical CDF values must not be NaN"));
        }
        values.sort_by(f64::total_cmp);
        let count = values.len();
        Ok(Self {
            standardized: values,
            count,
        })
    }

    /// `#{x ≤ t} / count`.
    pub fn eval(&self, t: f64) -> f64 {
        self.standardized.partition_point(|&x| x <= t) as f64 / self.count as f64
    }
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a − F_b|`.
pub fn ks_two_sample(a: &EmpiricalCdf, b: &EmpiricalCdf) -> f64 {
    let (xa, xb) = (&a.standardized, &b.standardized);
    let (na, nb) = (a.count as f64, b.count as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < xa.len() && j < xb.len() {
        let t = xa[i].min(xb[j]);
        while i < xa.len() && xa[i] <= t {
            i += 1;
        }
        while j < xb.len() && xb[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// One-sample statistic against the uniform law on `[0, 1]`.
pub fn ks_uniform(values: &[f64]) -> f64 {
    let mut u = values.to_vec();
    u.sort_by(f64::total_cmp);
    let n = u.len() as f64;
    u.iter()
        .enumerate()
        .map(|(i, &x)| {
            let x = x.clamp(0.0, 1.0);
            ((i as f64 + 1.0) / n - x).max(x - i as f64 / n)
        })
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value `1.628 √((n+m)/(nm))` of the two-sample test.
pub fn ks_critical_two_sample(n: usize, m: usize) -> f64 {
    1.628 * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Asymptotic 1% critical value `1.628 / √n` of the one-sample test.
pub fn ks_critical_one_sample(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}
