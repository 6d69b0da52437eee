use serde::{Deserialize, Serialize};

use crate::composite::r_substitution;
use crate::elliptic::{ag_ratio, Modulus};
use crate::error::{Error, Result};
use crate::lemmafn::phi_deficit;
use crate::means::{contraharmonic, quadratic, PositivePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// `t Q + (1-t) C`
    ConvexQC,
    /// `Q^t C^(1-t)`
    GeometricQC,
    /// `Q C / (t Q + (1-t) C)`
    HarmonicQC,
    /// `C(sqrt(p a^2 + (1-p) b^2), sqrt((1-p) a^2 + p b^2))`
    ContraMix,
}

impl Shape {
    pub fn range(&self) -> (f64, f64) {
        match self {
            Shape::ContraMix => (0.5, 1.0),
            _ => (0.0, 1.0),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Shape::ConvexQC => "ConvexQC",
            Shape::GeometricQC => "GeometricQC",
            Shape::HarmonicQC => "HarmonicQC",
            Shape::ContraMix => "ContraMix",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundFamily {
    shape: Shape,
    parameter: f64,
}

impl BoundFamily {
    pub fn new(shape: Shape, parameter: f64) -> Result<Self> {
        let (lo, hi) = shape.range();
        if !(lo..=hi).contains(&parameter) {
            return Err(Error::ParameterRange {
                family: shape.name(),
                value: parameter,
                lo,
                hi,
            });
        }
        Ok(Self { shape, parameter })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn parameter(&self) -> f64 {
        self.parameter
    }

    /// `(bound - AG_{Q,C}) / C` from the modulus alone. The subtraction is
    /// carried out on the deficits `1 - pi/(2K)` and `1 - r'`, so the result
    /// keeps its relative accuracy as `r -> 0` where it is `O(r^4)`.
    pub fn reduced_gap(&self, m: &Modulus) -> f64 {
        let u = ag_ratio(m).deficit;
        let w = m.complement_deficit();
        let t = self.parameter;
        match self.shape {
            Shape::ConvexQC => u - t * w,
            Shape::GeometricQC => {
                let log_scaled = t * m.ln_r_prime();
                -log_scaled.exp() * ((-u).ln_1p() - log_scaled).exp_m1()
            }
            Shape::HarmonicQC => (u - w * (1.0 - t) - t * u * w) / (1.0 - t * w),
            Shape::ContraMix => u - phi_deficit(4.0 * t - 2.0, m),
        }
    }

    /// `bound / C` as a function of the modulus.
    pub fn reduced_value(&self, m: &Modulus) -> f64 {
        let w = m.complement_deficit();
        let t = self.parameter;
        match self.shape {
            Shape::ConvexQC => 1.0 - t * w,
            Shape::GeometricQC => (t * m.ln_r_prime()).exp(),
            Shape::HarmonicQC => m.r_prime() / (1.0 - t * w),
            Shape::ContraMix => 1.0 - phi_deficit(4.0 * t - 2.0, m),
        }
    }
}

/// Evaluates the bound directly from the pair.
pub fn eval_bound(f: &BoundFamily, p: &PositivePair) -> f64 {
    let q = quadratic(p);
    let c = contraharmonic(p);
    let t = f.parameter;
    match f.shape {
        Shape::ConvexQC => t * q + (1.0 - t) * c,
        Shape::GeometricQC => q.powf(t) * c.powf(1.0 - t),
        Shape::HarmonicQC => q * c / (t * q + (1.0 - t) * c),
        Shape::ContraMix => {
            let (a2, b2) = (p.a() * p.a(), p.b() * p.b());
            let x = (t * a2 + (1.0 - t) * b2).sqrt();
            let y = ((1.0 - t) * a2 + t * b2).sqrt();
            contraharmonic(&PositivePair::new(x, y).expect("mixture of positive squares"))
        }
    }
}

/// `bound - AG_{Q,C}` at `p`, from the reduced form.
pub fn bound_gap(f: &BoundFamily, p: &PositivePair) -> f64 {
    let sub = r_substitution(p);
    if sub.degenerate {
        return 0.0;
    }
    contraharmonic(p) * f.reduced_gap(&sub.modulus)
}
