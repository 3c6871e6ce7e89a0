use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::painleve::{default_solution, PainleveSolution};
use crate::error::{ensure_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwKind {
    /// Real (β = 1) law, `F1 = exp(−(I1 + I2)/2)`.
    Tw1,
    /// Complex (β = 2) law, `F2 = exp(−I2)`.
    Tw2,
}

impl fmt::Display for TwKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwKind::Tw1 => "tw1",
            TwKind::Tw2 => "tw2",
        })
    }
}

impl FromStr for TwKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tw1" | "1" => Ok(TwKind::Tw1),
            "tw2" | "2" => Ok(TwKind::Tw2),
            other => Err(Error::Parse(format!("unknown Tracy–Widom law '{other}'"))),
        }
    }
}

const QUANTILE_TOL: f64 = 1e-8;

/// A Tracy–Widom distribution function backed by a Painlevé table.
#[derive(Debug, Clone)]
pub struct TwCdf {
    pub which: TwKind,
    pub solution: Arc<PainleveSolution>,
    /// `[s_min, s_max]`; the CDF is exactly 0 below and 1 above.
    pub domain: (f64, f64),
}

impl TwCdf {
    pub fn new(which: TwKind, solution: Arc<PainleveSolution>) -> Self {
        let domain = (solution.lower(), solution.upper());
        Self {
            which,
            solution,
            domain,
        }
    }

    /// Uses the shared default solution.
    pub fn with_default(which: TwKind) -> Self {
        Self::new(which, default_solution())
    }

    fn exponent(&self, i1: f64, i2: f64) -> f64 {
        match self.which {
            TwKind::Tw1 => 0.5 * (i1 + i2),
            TwKind::Tw2 => i2,
        }
    }

    pub fn cdf(&self, s: f64) -> f64 {
        if s.is_nan() {
            return f64::NAN;
        }
        if s < self.domain.0 {
            return 0.0;
        }
        if s > self.domain.1 {
            return 1.0;
        }
        let v = self.solution.eval(s);
        (-self.exponent(v.i1, v.i2)).exp()
    }

    /// Density: `F2 J` or `F1 (q + J)/2`.
    pub fn pdf(&self, s: f64) -> f64 {
        if !(self.domain.0..=self.domain.1).contains(&s) {
            return 0.0;
        }
        let v = self.solution.eval(s);
        let f = (-self.exponent(v.i1, v.i2)).exp();
        match self.which {
            TwKind::Tw1 => 0.5 * f * (v.q + v.j),
            TwKind::Tw2 => f * v.j,
        }
    }

    /// Inverse CDF by bisection, polished by Newton steps.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        ensure_finite("p", p)?;
        if p <= 0.0 || p >= 1.0 {
            return Err(Error::domain(format!("p must lie in (0, 1), got {p}")));
        }
        let (mut a, mut b) = self.domain;
        if self.cdf(b) < p || self.cdf(a) > p {
            return Err(Error::domain(format!(
                "p = {p} is outside the range resolved by the table"
            )));
        }
        while b - a > 1e-6 {
            let mid = 0.5 * (a + b);
            if self.cdf(mid) < p {
                a = mid;
            } else {
                b = mid;
            }
        }
        let mut s = 0.5 * (a + b);
        for _ in 0..20 {
            let r = self.cdf(s) - p;
            if r.abs() <= 0.1 * QUANTILE_TOL {
                break;
            }
            let d = self.pdf(s);
            let next = s - r / d;
            s = if d > 0.0 && next > a && next < b {
                next
            } else {
                0.5 * (a + b)
            };
            if self.cdf(s) < p {
                a = s;
            } else {
                b = s;
            }
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_outside_the_domain() {
        let f = TwCdf::with_default(TwKind::Tw2);
        assert_eq!(f.cdf(f.domain.1 + 1.0), 1.0);
        assert_eq!(f.cdf(f.domain.0 - 1.0), 0.0);
    }

    #[test]
    fn quantile_rejects_non_probabilities() {
        let f = TwCdf::with_default(TwKind::Tw1);
        for p in [0.0, 1.0, -0.2, f64::NAN] {
            assert!(f.quantile(p).is_err());
        }
    }

    #[test]
    fn density_matches_a_difference_quotient() {
        for kind in [TwKind::Tw1, TwKind::Tw2] {
            let f = TwCdf::with_default(kind);
            for s in [-3.0, -1.0, 0.5] {
                let h = 1e-4;
                let fd = (f.cdf(s + h) - f.cdf(s - h)) / (2.0 * h);
                assert!((fd - f.pdf(s)).abs() < 1e-7, "{kind} at {s}");
            }
        }
    }

    #[test]
    fn parses_names() {
        assert_eq!("TW1".parse::<TwKind>().unwrap(), TwKind::Tw1);
        assert_eq!("2".parse::<TwKind>().unwrap(), TwKind::Tw2);
        assert!("tw3".parse::<TwKind>().is_err());
    }
}
