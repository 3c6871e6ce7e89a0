use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Strictly decreasing along the schedule.
    Decreasing,
    /// Every value at or below the tolerance.
    Bounded,
    /// Decreasing up to one non-monotone step, ending at the minimum.
    Converged,
    Failed,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self != Verdict::Failed
    }

    pub fn for_decreasing(values: &[f64]) -> Verdict {
        if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
            return Verdict::Failed;
        }
        let rises = values.windows(2).filter(|w| w[1] >= w[0]).count();
        let last = values[values.len() - 1];
        let last_is_min = values.iter().all(|&v| last <= v);
        match rises {
            0 => Verdict::Decreasing,
            1 if last_is_min && values.len() > 2 => Verdict::Converged,
            _ => Verdict::Failed,
        }
    }

    pub fn for_bounded(values: &[f64], bound: f64) -> Verdict {
        if !values.is_empty() && values.iter().all(|v| v.is_finite() && *v <= bound) {
            Verdict::Bounded
        } else {
            Verdict::Failed
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    /// Should shrink along the schedule.
    Decreasing,
    /// Should stay below `tolerance`.
    Bounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub metric: String,
    pub kind: MetricKind,
    pub schedule: Vec<(u64, u64)>,
    pub values: Vec<f64>,
    pub verdict: Verdict,
    pub tolerance: f64,
}

impl ConvergenceReport {
    pub fn new(
        metric: impl Into<String>,
        kind: MetricKind,
        schedule: Vec<(u64, u64)>,
        values: Vec<f64>,
        tolerance: f64,
    ) -> Self {
        let verdict = Self::derive_verdict(kind, &values, tolerance);
        Self {
            metric: metric.into(),
            kind,
            schedule,
            values,
            verdict,
            tolerance,
        }
    }

    pub fn derive_verdict(kind: MetricKind, values: &[f64], tolerance: f64) -> Verdict {
        match kind {
            MetricKind::Decreasing => Verdict::for_decreasing(values),
            MetricKind::Bounded => Verdict::for_bounded(values, tolerance),
        }
    }

    /// True when the stored verdict is the one the stored values imply.
    pub fn is_consistent(&self) -> bool {
        self.verdict == Self::derive_verdict(self.kind, &self.values, self.tolerance)
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.verdict == Verdict::Decreasing
    }
}
