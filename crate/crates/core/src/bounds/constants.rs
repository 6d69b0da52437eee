use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI, SQRT_2};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::elliptic::{ag_ratio, ell_ke, Modulus};

/// Sharp constants of the four bound families, derived from `K(sqrt(2)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpConstants {
    /// `(2 + sqrt 2)(1 - pi/(2 K(sqrt2/2)))`
    pub delta1: f64,
    /// `2 ln(2 K(sqrt2/2)/pi) / ln 2`
    pub delta2: f64,
    /// `(sqrt 2 + 1)(sqrt 2 - 2 K(sqrt2/2)/pi)`
    pub delta3: f64,
    /// `4 sqrt(2 K^2 (pi^2 - 2 K^2)) / pi^2` at `K = K(sqrt2/2)`; the unique
    /// `lambda` with `Phi_lambda(sqrt2/2) = pi/(2 K(sqrt2/2))`.
    pub delta4: f64,
    /// `(sqrt 2 + 2)/4`
    pub alpha4_lower: f64,
    /// `(delta4 + 2)/4`
    pub beta4_upper: f64,
    pub k_half: f64,
    pub e_half: f64,
}

impl SharpConstants {
    pub fn compute() -> Self {
        let half = Modulus::half_sqrt2();
        let (k_half, e_half) = ell_ke(&half);
        let ratio = ag_ratio(&half);
        let delta1 = (2.0 + SQRT_2) * ratio.deficit;
        let delta2 = -2.0 * ratio.value.ln() / LN_2;
        let delta3 = (SQRT_2 + 1.0) * (SQRT_2 - 1.0 / ratio.value);
        let k2 = k_half * k_half;
        let delta4 = 4.0 * (2.0 * k2 * (PI * PI - 2.0 * k2)).sqrt() / (PI * PI);
        Self {
            delta1,
            delta2,
            delta3,
            delta4,
            alpha4_lower: (SQRT_2 + 2.0) / 4.0,
            beta4_upper: (delta4 + 2.0) / 4.0,
            k_half,
            e_half,
        }
    }

    /// `(label, value, formula)` rows in a fixed order.
    pub fn rows(&self) -> Vec<(&'static str, f64, &'static str)> {
        vec![
            ("delta1", self.delta1, "(2+sqrt2)(1 - pi/(2K(sqrt2/2)))"),
            ("delta2", self.delta2, "2 log(2K(sqrt2/2)/pi) / log 2"),
            ("delta3", self.delta3, "(sqrt2+1)(sqrt2 - 2K(sqrt2/2)/pi)"),
            ("delta4", self.delta4, "4 sqrt(2K^2 (pi^2 - 2K^2)) / pi^2, K = K(sqrt2/2)"),
            ("alpha4", self.alpha4_lower, "(sqrt2+2)/4"),
            ("beta4", self.beta4_upper, "(delta4+2)/4"),
            ("K(sqrt2/2)", self.k_half, "pi / (2 AG(1, sqrt2/2))"),
            ("E(sqrt2/2)", self.e_half, "K(sqrt2/2) (1 - sum 2^(n-1) c_n^2)"),
        ]
    }
}

pub fn sharp_constants() -> &'static SharpConstants {
    static CONSTANTS: OnceLock<SharpConstants> = OnceLock::new();
    CONSTANTS.get_or_init(SharpConstants::compute)
}

/// Right end of the substitution range.
pub const R_MAX: f64 = FRAC_1_SQRT_2;
