//! Arithmetic-geometric mean and the complete elliptic integrals.
//!
//! `K` and `E` are evaluated through the AGM of `(1, r')`. The iteration
//! tracks the gap `a_n - b_n` with the recurrence
//! `gap_{n+1} = gap_n^2 / (2 (sqrt(a_n) + sqrt(b_n))^2)` instead of
//! subtracting nearly equal numbers, so the half-gap sum `1 - AG(1, r')` stays
//! accurate to a few ulps even when `r` is tiny. The bound verifiers rely on
//! that deficit to resolve margins of order `r^4`.
//!
//! [`quadrature`] holds an independent adaptive Simpson evaluation of the
//! defining integrals, used as the oracle for everything in this module.

pub mod quadrature;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::means::PositivePair;

/// Four units of relative machine precision.
pub const DEFAULT_AGM_TOL: f64 = 4.0 * f64::EPSILON;

pub const MAX_AGM_ITERATIONS: usize = 64;

/// Elliptic modulus `r` in `[0, 1)` with its complement `r' = sqrt(1 - r^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Modulus {
    r: f64,
    r_prime: f64,
}

impl Modulus {
    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::InvalidModulus(r));
        }
        Ok(Self {
            r,
            r_prime: ((1.0 - r) * (1.0 + r)).sqrt(),
        })
    }

    /// `sqrt(2)/2`, the right end of the range produced by the `(a, b) -> r`
    /// substitution.
    pub fn half_sqrt2() -> Self {
        Self {
            r: FRAC_1_SQRT_2,
            r_prime: FRAC_1_SQRT_2,
        }
    }

    /// Builds a modulus from both components when the complement is known more
    /// accurately than `sqrt(1 - r^2)` would give it.
    pub(crate) fn from_parts(r: f64, r_prime: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) || !(r_prime > 0.0 && r_prime <= 1.0) {
            return Err(Error::InvalidModulus(r));
        }
        Ok(Self { r, r_prime })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r_prime(&self) -> f64 {
        self.r_prime
    }

    /// `1 - r'`, computed as `r^2 / (1 + r')`.
    pub fn complement_deficit(&self) -> f64 {
        self.r * self.r / (1.0 + self.r_prime)
    }

    /// `ln r'`, computed as `ln(1 - r^2)/2`.
    pub fn ln_r_prime(&self) -> f64 {
        0.5 * (-self.r * self.r).ln_1p()
    }
}

/// Record of one AGM run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgmTrace {
    pub iterations: usize,
    pub final_a: f64,
    pub final_b: f64,
    /// `|a_n - b_n|` for `n = 0..=iterations`.
    pub gap_history: Vec<f64>,
}

/// `AG(a, b)`, iterating `(a, b) <- ((a+b)/2, sqrt(ab))` until
/// `|a - b| <= tol * max(a, b)`; the midpoint of the final pair is returned.
pub fn agm(p: &PositivePair, tol: f64) -> Result<(f64, AgmTrace)> {
    if !(tol > 0.0) {
        return Err(Error::OutOfDomain {
            what: "agm tolerance",
            value: tol,
            domain: "(0, inf)",
        });
    }
    let (a, b) = (p.max(), p.min());
    let run = iterate(a, b, a - b, tol)?;
    Ok((run.value(), run.trace))
}

/// `AG(a, b)` at the default tolerance. Convergence within the iteration cap
/// is guaranteed for any finite positive pair.
pub fn agm_value(p: &PositivePair) -> f64 {
    let (a, b) = (p.max(), p.min());
    iterate(a, b, a - b, DEFAULT_AGM_TOL)
        .expect("AGM converges quadratically for finite positive pairs")
        .value()
}

struct AgmRun {
    trace: AgmTrace,
    half_gap_sum: f64,
}

impl AgmRun {
    fn value(&self) -> f64 {
        self.trace.final_a - 0.5 * self.trace.gap_history.last().copied().unwrap_or(0.0)
    }

    /// `a_0 - AG(a_0, b_0)`.
    fn deficit(&self) -> f64 {
        self.half_gap_sum + 0.5 * self.trace.gap_history.last().copied().unwrap_or(0.0)
    }
}

fn iterate(mut a: f64, mut b: f64, mut gap: f64, tol: f64) -> Result<AgmRun> {
    debug_assert!(a >= b && b > 0.0);
    let mut gap_history = vec![gap];
    let mut half_gap_sum = 0.0;
    let mut iterations = 0;
    while gap > tol * a {
        if iterations == MAX_AGM_ITERATIONS {
            return Err(Error::NoConvergence(MAX_AGM_ITERATIONS));
        }
        let (sa, sb) = (a.sqrt(), b.sqrt());
        let root_sum = sa + sb;
        half_gap_sum += 0.5 * gap;
        a = 0.5 * (a + b);
        b = sa * sb;
        gap = gap * gap / (2.0 * root_sum * root_sum);
        gap_history.push(gap);
        iterations += 1;
    }
    Ok(AgmRun {
        trace: AgmTrace {
            iterations,
            final_a: a,
            final_b: b,
            gap_history,
        },
        half_gap_sum,
    })
}

/// `AG(1, r') = pi / (2 K(r))` together with its deficit `1 - AG(1, r')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgRatio {
    pub value: f64,
    pub deficit: f64,
}

pub fn ag_ratio(m: &Modulus) -> AgRatio {
    let run = unit_run(m);
    let deficit = run.deficit();
    AgRatio {
        value: 1.0 - deficit,
        deficit,
    }
}

fn unit_run(m: &Modulus) -> AgmRun {
    iterate(1.0, m.r_prime, m.complement_deficit(), DEFAULT_AGM_TOL)
        .expect("AGM of (1, r') converges for r in [0, 1)")
}

/// `K(r) = pi / (2 AG(1, r'))`.
pub fn ell_k(m: &Modulus) -> f64 {
    FRAC_PI_2 / ag_ratio(m).value
}

/// `E(r) = K(r) (1 - sum_{n>=0} 2^{n-1} c_n^2)` with `c_0 = r` and
/// `c_{n+1} = (a_n - b_n)/2` from the AGM of `(1, r')`.
pub fn ell_e(m: &Modulus) -> f64 {
    let (ratio, sum) = e_parts(m);
    FRAC_PI_2 * (1.0 - sum) / ratio.value
}

/// `1 - 2 E(r) / pi`, accurate for small `r`.
pub fn e_deficit(m: &Modulus) -> f64 {
    let (ratio, sum) = e_parts(m);
    (sum - ratio.deficit) / ratio.value
}

fn e_parts(m: &Modulus) -> (AgRatio, f64) {
    let (ratio, tail) = e_tail(m);
    (ratio, 0.5 * m.r * m.r + tail)
}

/// The AGM ratio and `sum_{n>=1} 2^{n-1} c_n^2`.
fn e_tail(m: &Modulus) -> (AgRatio, f64) {
    let run = unit_run(m);
    let deficit = run.deficit();
    let mut tail = 0.0;
    let mut weight = 0.25;
    for gap in &run.trace.gap_history {
        tail += weight * gap * gap;
        weight *= 2.0;
    }
    (
        AgRatio {
            value: 1.0 - deficit,
            deficit,
        },
        tail,
    )
}

/// `E - r'^2 K = K (r^2/2 - tail)`, without cancellation for small `r`.
pub fn e_minus_rp2_k(m: &Modulus) -> f64 {
    let (ratio, tail) = e_tail(m);
    FRAC_PI_2 * (0.5 * m.r * m.r - tail) / ratio.value
}

/// `K - E = K (r^2/2 + tail)`.
pub fn k_minus_e(m: &Modulus) -> f64 {
    let (ratio, tail) = e_tail(m);
    FRAC_PI_2 * (0.5 * m.r * m.r + tail) / ratio.value
}

/// Both integrals from one AGM run.
pub fn ell_ke(m: &Modulus) -> (f64, f64) {
    let (ratio, sum) = e_parts(m);
    let k = FRAC_PI_2 / ratio.value;
    (k, k * (1.0 - sum))
}

fn require_positive(m: &Modulus, what: &'static str) -> Result<()> {
    if m.r > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: m.r,
            domain: "(0, 1)",
        })
    }
}

/// `dK/dr = (E - r'^2 K) / (r r'^2)`.
pub fn d_k(m: &Modulus) -> Result<f64> {
    require_positive(m, "dK")?;
    Ok(e_minus_rp2_k(m) / (m.r * m.r_prime * m.r_prime))
}

/// `dE/dr = (E - K) / r`.
pub fn d_e(m: &Modulus) -> Result<f64> {
    require_positive(m, "dE")?;
    Ok(-k_minus_e(m) / m.r)
}

/// `d[E - r'^2 K]/dr = r K`.
pub fn d_e_minus_rp2_k(m: &Modulus) -> f64 {
    m.r * ell_k(m)
}

/// `d[K - E]/dr = r E / r'^2`.
pub fn d_k_minus_e(m: &Modulus) -> f64 {
    m.r * ell_e(m) / (m.r_prime * m.r_prime)
}

/// The Landen image `2 sqrt(r)/(1+r)`, with complement `(1-r)/(1+r)`.
pub fn landen_modulus(m: &Modulus) -> Result<Modulus> {
    let k = 2.0 * m.r.sqrt() / (1.0 + m.r);
    let k_prime = (1.0 - m.r) / (1.0 + m.r);
    Modulus::from_parts(k, k_prime)
}

/// `K(2 sqrt(r)/(1+r))`, which equals `(1+r) K(r)`.
pub fn landen_k(m: &Modulus) -> Result<f64> {
    Ok(ell_k(&landen_modulus(m)?))
}

/// `E(2 sqrt(r)/(1+r))`, which equals `(2E - r'^2 K)/(1+r)`.
pub fn landen_e(m: &Modulus) -> Result<f64> {
    Ok(ell_e(&landen_modulus(m)?))
}
