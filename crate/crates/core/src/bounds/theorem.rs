use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::constants::{sharp_constants, R_MAX};
use super::family::{BoundFamily, Shape};
use super::report::{Sample, Side, VerificationReport};
use crate::composite::r_substitution;
use crate::elliptic::Modulus;
use crate::error::{Error, Result};
use crate::means::{contraharmonic, PositivePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T31,
    T32,
    T33,
    T34,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [TheoremId::T31, TheoremId::T32, TheoremId::T33, TheoremId::T34];

    pub fn shape(&self) -> Shape {
        match self {
            TheoremId::T31 => Shape::ConvexQC,
            TheoremId::T32 => Shape::GeometricQC,
            TheoremId::T33 => Shape::HarmonicQC,
            TheoremId::T34 => Shape::ContraMix,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::T31 => "T31",
            TheoremId::T32 => "T32",
            TheoremId::T33 => "T33",
            TheoremId::T34 => "T34",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name().eq_ignore_ascii_case(s))
    }

    /// `(lower parameter, upper parameter)` at the sharp endpoints.
    pub fn sharp_params(&self) -> (f64, f64) {
        let c = sharp_constants();
        match self {
            TheoremId::T31 => (c.delta1, 0.5),
            TheoremId::T32 => (0.5, c.delta2),
            TheoremId::T33 => (0.5, c.delta3),
            TheoremId::T34 => (c.alpha4_lower, c.beta4_upper),
        }
    }

    /// Sign of the parameter move that breaks the given side. For T31/T32 a
    /// larger parameter puts more weight on `Q` and lowers the bound; for
    /// T33/T34 it raises it.
    pub fn forbidden_direction(&self, side: Side) -> f64 {
        let lowers_bound = matches!(self, TheoremId::T31 | TheoremId::T32);
        match (side, lowers_bound) {
            (Side::Lower, true) | (Side::Upper, false) => -1.0,
            (Side::Lower, false) | (Side::Upper, true) => 1.0,
        }
    }

    /// Sharp parameters with the `side` endpoint moved by `eps` in its
    /// forbidden direction.
    pub fn perturbed_params(&self, side: Side, eps: f64) -> (f64, f64) {
        let (lo, hi) = self.sharp_params();
        let step = self.forbidden_direction(side) * eps;
        match side {
            Side::Lower => (lo + step, hi),
            Side::Upper => (lo, hi + step),
        }
    }
}

/// Checks `lower < AG_{Q,C}(a,b) < upper` on every pair.
pub fn verify_theorem(
    id: TheoremId,
    param_lower: f64,
    param_upper: f64,
    pairs: &[PositivePair],
    grid: &str,
) -> Result<(VerificationReport, VerificationReport)> {
    let lower = BoundFamily::new(id.shape(), param_lower)?;
    let upper = BoundFamily::new(id.shape(), param_upper)?;
    let samples: Vec<(Sample, Sample)> = pairs
        .par_iter()
        .map(|p| {
            let sub = r_substitution(p);
            let r = sub.modulus.r();
            let (lo_gap, hi_gap) = if sub.degenerate {
                (0.0, 0.0)
            } else {
                let c = contraharmonic(p);
                (
                    -c * lower.reduced_gap(&sub.modulus),
                    c * upper.reduced_gap(&sub.modulus),
                )
            };
            let at = |margin| Sample {
                a: Some(p.a()),
                b: Some(p.b()),
                r,
                margin,
            };
            (at(lo_gap), at(hi_gap))
        })
        .collect();
    let (lo, hi): (Vec<Sample>, Vec<Sample>) = samples.into_iter().unzip();
    let label = |side: Side| format!("{}.{}", id.name(), side.name());
    Ok((
        VerificationReport::from_samples(label(Side::Lower), Some(lower), Side::Lower, grid, &lo),
        VerificationReport::from_samples(label(Side::Upper), Some(upper), Side::Upper, grid, &hi),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub p_mid: f64,
    /// `ContraMix(p_mid) > AG_{Q,C}` somewhere below every point where it is smaller.
    pub violates_lower_near_zero: bool,
    /// `ContraMix(p_mid) < AG_{Q,C}` somewhere above every point where it is larger.
    pub violates_upper_near_half: bool,
    /// Smallest scanned `r` with `ContraMix(p_mid) > AG_{Q,C}`.
    pub first_lower_violation: Option<f64>,
    /// Largest scanned `r` with `ContraMix(p_mid) < AG_{Q,C}`.
    pub last_upper_violation: Option<f64>,
    pub n_points: usize,
}

pub const PROBE_INSET: f64 = 1e-3;
pub const PROBE_POINTS: usize = 2048;

/// Scans `r` in `(1e-3, sqrt2/2 - 1e-3)` for the sign of
/// `ContraMix(p_mid) - AG_{Q,C}`, for `p_mid` strictly between the two
/// sharp endpoints of T34.
pub fn sharpness_probe_t34(p_mid: f64) -> Result<ProbeReport> {
    let c = sharp_constants();
    if !(p_mid > c.alpha4_lower && p_mid < c.beta4_upper) {
        return Err(Error::OutOfDomain {
            what: "T34 probe parameter",
            value: p_mid,
            domain: "((sqrt2+2)/4, (delta4+2)/4)",
        });
    }
    let family = BoundFamily::new(Shape::ContraMix, p_mid)?;
    let (lo, hi) = (PROBE_INSET, R_MAX - PROBE_INSET);
    let step = (hi - lo) / (PROBE_POINTS - 1) as f64;
    let gaps: Vec<(f64, f64)> = (0..PROBE_POINTS)
        .into_par_iter()
        .map(|i| {
            let r = lo + step * i as f64;
            let m = Modulus::new(r).expect("probe range lies in (0, 1)");
            (r, family.reduced_gap(&m))
        })
        .collect();
    let first_lower_violation = gaps.iter().find(|(_, g)| *g > 0.0).map(|(r, _)| *r);
    let first_upper_violation = gaps.iter().find(|(_, g)| *g < 0.0).map(|(r, _)| *r);
    let last_lower_violation = gaps.iter().rev().find(|(_, g)| *g > 0.0).map(|(r, _)| *r);
    let last_upper_violation = gaps.iter().rev().find(|(_, g)| *g < 0.0).map(|(r, _)| *r);
    let violates_lower_near_zero = match (first_lower_violation, first_upper_violation) {
        (Some(l), Some(u)) => l < u,
        (Some(_), None) => true,
        _ => false,
    };
    let violates_upper_near_half = match (last_upper_violation, last_lower_violation) {
        (Some(u), Some(l)) => u > l,
        (Some(_), None) => true,
        _ => false,
    };
    Ok(ProbeReport {
        p_mid,
        violates_lower_near_zero,
        violates_upper_near_half,
        first_lower_violation,
        last_upper_violation,
        n_points: PROBE_POINTS,
    })
}
