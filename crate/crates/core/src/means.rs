//! Bivariate means.
//!
//! Every mean here is symmetric, homogeneous of degree one and satisfies
//! `min(a,b) <= M(a,b) <= max(a,b)`. The power-difference families
//! (generalized logarithmic, Gini, Stolarsky) are evaluated in the form
//! `min * F(ln(max/min))`, which keeps them homogeneous to rounding and lets
//! the removable singularities be replaced by their limits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters within this distance of a removable singularity use the limit
/// branch.
pub const SINGULAR_EPS: f64 = 1e-9;

/// Pairs with `|a-b| / max(a,b)` below this are treated as diagonal by the
/// logarithmic, identric and Stolarsky means.
pub const DIAGONAL_EPS: f64 = 1e-9;

/// An ordered pair of strictly positive finite reals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositivePair {
    a: f64,
    b: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0 {
            Ok(Self { a, b })
        } else {
            Err(Error::InvalidPair { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn min(&self) -> f64 {
        self.a.min(self.b)
    }

    pub fn max(&self) -> f64 {
        self.a.max(self.b)
    }

    /// The same pair with `a >= b`.
    pub fn ordered(&self) -> Self {
        Self {
            a: self.max(),
            b: self.min(),
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.a * t, self.b * t)
    }

    pub fn is_diagonal(&self) -> bool {
        self.a == self.b
    }

    fn near_diagonal(&self) -> bool {
        (self.max() - self.min()) / self.max() < DIAGONAL_EPS
    }

    /// `ln(max/min)`, always nonnegative.
    fn log_ratio(&self) -> f64 {
        (self.max() / self.min()).ln()
    }
}

pub fn arithmetic(p: &PositivePair) -> f64 {
    p.a / 2.0 + p.b / 2.0
}

pub fn geometric(p: &PositivePair) -> f64 {
    let prod = p.a * p.b;
    if prod.is_normal() {
        prod.sqrt()
    } else {
        p.a.sqrt() * p.b.sqrt()
    }
}

pub fn quadratic(p: &PositivePair) -> f64 {
    let m = p.max();
    let (x, y) = (p.a / m, p.b / m);
    m * (0.5 * (x * x + y * y)).sqrt()
}

pub fn contraharmonic(p: &PositivePair) -> f64 {
    let m = p.max();
    let (x, y) = (p.a / m, p.b / m);
    m * (x * x + y * y) / (x + y)
}

/// `(b-a)/(ln b - ln a)`, with `L(a,a) = a`.
pub fn logarithmic(p: &PositivePair) -> f64 {
    if p.is_diagonal() {
        return p.a;
    }
    if p.near_diagonal() {
        return arithmetic(p);
    }
    let x = p.log_ratio();
    p.min() * x.exp_m1() / x
}

/// `(b^b/a^a)^{1/(b-a)}/e`, with `I(a,a) = a`.
pub fn identric(p: &PositivePair) -> f64 {
    if p.is_diagonal() {
        return p.a;
    }
    if p.near_diagonal() {
        return arithmetic(p);
    }
    p.min() * log_stolarsky_coincident(1.0, p.log_ratio()).exp()
}

/// Generalized logarithmic mean `L_p`; `L_{-1} = L`, `L_0 = I`, `L_1 = A`.
pub fn genlog(p_exp: f64, pair: &PositivePair) -> f64 {
    // L_p(a,b) = S_{p+1,1}(a,b)
    stolarsky(p_exp + 1.0, 1.0, pair)
}

/// Gini mean `S_p = [(a^{p-1}+b^{p-1})/(a+b)]^{1/(p-2)}`, with
/// `S_2 = (a^a b^b)^{1/(a+b)}` selected only when `p == 2` exactly.
pub fn gini(p_exp: f64, pair: &PositivePair) -> f64 {
    if pair.is_diagonal() {
        return pair.a;
    }
    let lo = pair.min();
    let hi = pair.max();
    let x = pair.log_ratio();
    if p_exp == 2.0 {
        // ln S_2 = ln lo + hi ln(hi/lo) / (a+b)
        return lo * (hi / (hi + lo) * x).exp();
    }
    // with t = hi/lo: S_p = lo [(t^{p-1} + 1)/(t + 1)]^{1/(p-2)}
    let num = ln_one_plus_exp((p_exp - 1.0) * x);
    let den = ln_one_plus_exp(x);
    lo * ((num - den) / (p_exp - 2.0)).exp()
}

/// Stolarsky mean `S_{p,q} = [q(a^p-b^p) / (p(a^q-b^q))]^{1/(p-q)}` with the
/// removable singularities `p = q`, `p = 0`, `q = 0` replaced by their limits.
pub fn stolarsky(p_exp: f64, q_exp: f64, pair: &PositivePair) -> f64 {
    if pair.is_diagonal() {
        return pair.a;
    }
    if pair.near_diagonal() {
        return arithmetic(pair);
    }
    let x = pair.log_ratio();
    let log_scaled = if (p_exp - q_exp).abs() < SINGULAR_EPS {
        log_stolarsky_coincident(0.5 * (p_exp + q_exp), x)
    } else {
        (ln_power_difference(p_exp, x) - ln_power_difference(q_exp, x)) / (p_exp - q_exp)
    };
    pair.min() * log_scaled.exp()
}

/// `ln(expm1(s x)/s)` for `x > 0`, with limit `ln x` at `s = 0`.
fn ln_power_difference(s: f64, x: f64) -> f64 {
    if s.abs() < SINGULAR_EPS {
        return x.ln();
    }
    let y = s * x;
    if s > 0.0 {
        if y > 30.0 {
            y + (-(-y).exp()).ln_1p() - s.ln()
        } else {
            y.exp_m1().ln() - s.ln()
        }
    } else {
        (-y.exp_m1()).ln() - (-s).ln()
    }
}

/// `ln(S_{s,s}/min)`: the derivative of `ln(expm1(s x)/s)` in `s`.
fn log_stolarsky_coincident(s: f64, x: f64) -> f64 {
    let y = s * x;
    if y.abs() < 1e-3 {
        // x/(1-e^{-y}) - 1/s expanded in y
        return x * (0.5 + y / 12.0 - y * y * y / 720.0);
    }
    x / (-(-y).exp_m1()) - 1.0 / s
}

/// `ln(1 + e^y)` without overflow.
fn ln_one_plus_exp(y: f64) -> f64 {
    if y > 0.0 {
        y + (-y).exp().ln_1p()
    } else {
        y.exp().ln_1p()
    }
}
