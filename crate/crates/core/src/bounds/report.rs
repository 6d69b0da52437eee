use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::family::BoundFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn name(&self) -> &'static str {
        match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        }
    }
}

/// A grid point where the inequality failed. `a` and `b` are absent for
/// checks that depend on the modulus alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub r: f64,
    pub margin: f64,
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub r: f64,
    pub margin: f64,
}

impl Sample {
    pub fn modulus_only(r: f64, margin: f64) -> Self {
        Self {
            a: None,
            b: None,
            r,
            margin,
        }
    }
}

/// Margins are signed so that a positive value means the inequality holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub label: String,
    pub family: Option<BoundFamily>,
    pub side: Side,
    pub grid: String,
    pub margins: Vec<f64>,
    pub min_margin: f64,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn from_samples(
        label: impl Into<String>,
        family: Option<BoundFamily>,
        side: Side,
        grid: impl Into<String>,
        samples: &[Sample],
    ) -> Self {
        let mut min_margin = f64::INFINITY;
        let mut violations = Vec::new();
        for s in samples {
            if s.margin.is_nan() || min_margin.is_nan() {
                min_margin = f64::NAN;
            } else {
                min_margin = min_margin.min(s.margin);
            }
            if !(s.margin > 0.0) {
                violations.push(Violation {
                    a: s.a,
                    b: s.b,
                    r: s.r,
                    margin: s.margin,
                });
            }
        }
        Self {
            label: label.into(),
            family,
            side,
            grid: grid.into(),
            margins: samples.iter().map(|s| s.margin).collect(),
            min_margin,
            violations,
        }
    }

    /// Evaluates `check` on every point in parallel, keeping input order.
    pub fn evaluate<T, F>(
        label: impl Into<String>,
        family: Option<BoundFamily>,
        side: Side,
        grid: impl Into<String>,
        points: &[T],
        check: F,
    ) -> Self
    where
        T: Sync,
        F: Fn(&T) -> Sample + Sync,
    {
        let samples: Vec<Sample> = points.par_iter().map(|p| check(p)).collect();
        Self::from_samples(label, family, side, grid, &samples)
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn n_points(&self) -> usize {
        self.margins.len()
    }
}
