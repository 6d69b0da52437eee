//! Elementary two-sided bounds for `K` and `E` on `(0, sqrt2/2)`, and the
//! quartic and quadratic polynomial bounds.
//!
//! Every expression is kept as its excess over `1` so comparisons against
//! `2K/pi - 1` stay meaningful as `r -> 0`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use serde::{Deserialize, Serialize};

use super::constants::{sharp_constants, R_MAX};
use crate::elliptic::{ag_ratio, e_deficit, Modulus};
use crate::error::{Error, Result};
use crate::lemmafn::{eta_unchecked, phi_parts};

/// Four lower and four upper expressions for `2K/pi`, each minus one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeTerms {
    pub lower_excess: [f64; 4],
    pub upper_excess: [f64; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KEnvelope {
    /// `m(r)`, the largest lower expression.
    pub m: f64,
    /// `M(r)`, the smallest upper expression.
    pub big_m: f64,
    pub m_excess: f64,
    pub big_m_excess: f64,
    pub terms: EnvelopeTerms,
}

impl KEnvelope {
    pub fn k_lower(&self) -> f64 {
        FRAC_PI_2 * self.m
    }

    pub fn k_upper(&self) -> f64 {
        FRAC_PI_2 * self.big_m
    }

    /// `(M - m) / m`.
    pub fn relative_width(&self) -> f64 {
        (self.big_m_excess - self.m_excess) / self.m
    }
}

fn open_half(m: &Modulus, what: &'static str) -> Result<()> {
    if m.r() > 0.0 && m.r() < R_MAX {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            value: m.r(),
            domain: "(0, sqrt(2)/2)",
        })
    }
}

/// `1/Phi_lambda(r) - 1`.
fn phi_reciprocal_excess(lambda: f64, m: &Modulus) -> f64 {
    let (_, s_minus_2rp) = phi_parts(lambda, m);
    s_minus_2rp / (2.0 * m.r_prime())
}

pub fn envelope_terms(m: &Modulus) -> EnvelopeTerms {
    let c = sharp_constants();
    let w = m.complement_deficit();
    let rp = m.r_prime();
    let ln_rp = m.ln_r_prime();
    EnvelopeTerms {
        lower_excess: [
            w / (2.0 - w),
            (-c.delta2 * ln_rp).exp_m1(),
            w * (1.0 - c.delta3) / rp,
            phi_reciprocal_excess(c.delta4, m),
        ],
        upper_excess: [
            c.delta1 * w / (1.0 - c.delta1 * w),
            (-0.5 * ln_rp).exp_m1(),
            w / (2.0 * rp),
            phi_reciprocal_excess(SQRT_2, m),
        ],
    }
}

/// `(pi/2) m(r) < K(r) < (pi/2) M(r)`.
pub fn k_envelope(m: &Modulus) -> Result<KEnvelope> {
    open_half(m, "K envelope")?;
    let terms = envelope_terms(m);
    let m_excess = terms.lower_excess.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let big_m_excess = terms.upper_excess.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(KEnvelope {
        m: 1.0 + m_excess,
        big_m: 1.0 + big_m_excess,
        m_excess,
        big_m_excess,
        terms,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EEnvelope {
    /// `pi / (2 M(r))`
    pub lower: f64,
    /// `pi / (2 sqrt(r') m(r))`
    pub upper: f64,
}

/// `pi/(2M) < E(r) < pi/(2 sqrt(r') m)`.
pub fn e_envelope(m: &Modulus) -> Result<EEnvelope> {
    let env = k_envelope(m)?;
    Ok(EEnvelope {
        lower: FRAC_PI_2 / env.big_m,
        upper: FRAC_PI_2 / (m.r_prime().sqrt() * env.m),
    })
}

/// Signed margins `(K - (pi/2) m, (pi/2) M - K)`.
pub fn k_envelope_margins(m: &Modulus) -> Result<(f64, f64)> {
    let env = k_envelope(m)?;
    let ratio = ag_ratio(m);
    let excess = ratio.deficit / ratio.value;
    Ok((
        FRAC_PI_2 * (excess - env.m_excess),
        FRAC_PI_2 * (env.big_m_excess - excess),
    ))
}

/// Signed margins `(E - pi/(2M), pi/(2 sqrt(r') m) - E)`.
pub fn e_envelope_margins(m: &Modulus) -> Result<(f64, f64)> {
    let env = k_envelope(m)?;
    let e = e_deficit(m);
    let big = env.big_m_excess;
    // E - pi/(2M) = (pi/2) (1 - 1/M - e)
    let lower = FRAC_PI_2 * (big / (1.0 + big) - e);
    // 1 - (1-e)(1-v)(1+k) with sqrt(r') = 1 - v and m = 1 + k
    let v = -(0.5 * m.ln_r_prime()).exp_m1();
    let k = env.m_excess;
    let slack = v + e - k + v * k + e * k - v * e - v * e * k;
    let upper = FRAC_PI_2 * slack / ((1.0 - v) * env.m);
    Ok((lower, upper))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolynomialBounds {
    /// `1 - r^2/4 - 7 r^4/64`, a lower bound for `pi/(2K)`
    pub c28_lower: f64,
    /// `1 - r^2/4 - 5 r^4/64`, an upper bound for `pi/(2K)`
    pub c28_upper: f64,
    /// `(pi/2)(1 + r^2/4)`, a lower bound for `K`
    pub l26_lower: f64,
}

pub fn k_polynomial_bounds(m: &Modulus) -> PolynomialBounds {
    let q = m.r() * m.r();
    let base = 1.0 - 0.25 * q;
    PolynomialBounds {
        c28_lower: base - 7.0 / 64.0 * q * q,
        c28_upper: base - 5.0 / 64.0 * q * q,
        l26_lower: FRAC_PI_2 * (1.0 + 0.25 * q),
    }
}

/// Signed margins for `c28_lower < pi/(2K) < c28_upper`.
pub fn corollary28_margins(m: &Modulus) -> Result<(f64, f64)> {
    open_half(m, "quartic bounds")?;
    let r4 = m.r().powi(4);
    let eta = eta_unchecked(m);
    Ok((r4 * (eta + 7.0 / 64.0), -r4 * (eta + 5.0 / 64.0)))
}

/// Signed margin for `K > (pi/2)(1 + r^2/4)` on `(0, 1)`.
pub fn lemma26_margin(m: &Modulus) -> Result<f64> {
    if !(m.r() > 0.0) {
        return Err(Error::OutOfDomain {
            what: "quadratic bound",
            value: m.r(),
            domain: "(0, 1)",
        });
    }
    let q = m.r() * m.r();
    let ratio = ag_ratio(m);
    // 2K/pi - 1 - r^2/4 = (u - x r^2/4)/x and u - r^2/4 = -r^4 eta
    let eta = eta_unchecked(m);
    Ok(FRAC_PI_2 * (0.25 * q * ratio.deficit - q * q * eta) / ratio.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::quadrature::{quad_e, quad_k};
    use std::f64::consts::PI;

    fn modulus(r: f64) -> Modulus {
        Modulus::new(r).unwrap()
    }

    #[test]
    fn k_bracket_at_half() {
        let m = modulus(0.5);
        let env = k_envelope(&m).unwrap();
        let k = quad_k(&m).unwrap();
        assert!(env.k_lower() < k && k < env.k_upper());
        let (lo, hi) = k_envelope_margins(&m).unwrap();
        assert!((lo - (k - env.k_lower())).abs() < 1e-12);
        assert!((hi - (env.k_upper() - k)).abs() < 1e-12);
    }

    #[test]
    fn envelope_terms_direct() {
        let r: f64 = 0.4;
        let m = modulus(r);
        let rp = (1.0 - r * r).sqrt();
        let c = sharp_constants();
        let phi = |l: f64| ((1.0 + l * r * rp).sqrt() - (1.0 - l * r * rp).sqrt()) / (l * r);
        let lower = [
            2.0 / (1.0 + rp),
            rp.powf(-c.delta2),
            (1.0 - c.delta3 + c.delta3 * rp) / rp,
            1.0 / phi(c.delta4),
        ];
        let upper = [
            1.0 / (1.0 - c.delta1 + c.delta1 * rp),
            1.0 / rp.sqrt(),
            (1.0 + rp) / (2.0 * rp),
            1.0 / phi(SQRT_2),
        ];
        let t = envelope_terms(&m);
        for i in 0..4 {
            assert!((1.0 + t.lower_excess[i] - lower[i]).abs() < 1e-14, "lower {i}");
            assert!((1.0 + t.upper_excess[i] - upper[i]).abs() < 1e-14, "upper {i}");
        }
        let env = k_envelope(&m).unwrap();
        assert!(t.lower_excess.iter().all(|&x| x <= env.m_excess));
        assert!(t.upper_excess.iter().all(|&x| x >= env.big_m_excess));
    }

    #[test]
    fn limits_at_zero() {
        let m = modulus(1e-9);
        let env = k_envelope(&m).unwrap();
        assert!((env.m - 1.0).abs() < 1e-15 && (env.big_m - 1.0).abs() < 1e-15);
        let e = e_envelope(&m).unwrap();
        assert!((e.lower - FRAC_PI_2).abs() < 1e-15 && (e.upper - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn width_at_065() {
        let env = k_envelope(&modulus(0.65)).unwrap();
        assert!(env.relative_width() > 0.0 && env.relative_width() < 0.01);
    }

    #[test]
    fn e_bracket_against_quadrature() {
        for r in [0.3, 0.5, 0.7] {
            let m = modulus(r);
            let e = quad_e(&m).unwrap();
            let env = e_envelope(&m).unwrap();
            assert!(env.lower < e && e < env.upper, "{r}");
            let (lo, hi) = e_envelope_margins(&m).unwrap();
            assert!((lo - (e - env.lower)).abs() < 1e-12);
            assert!((hi - (env.upper - e)).abs() < 1e-12);
        }
    }

    #[test]
    fn domain() {
        assert!(k_envelope(&modulus(0.0)).is_err());
        assert!(k_envelope(&Modulus::half_sqrt2()).is_err());
        assert!(corollary28_margins(&modulus(0.8)).is_err());
        assert!(lemma26_margin(&modulus(0.0)).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let m = modulus(0.5);
        let p = k_polynomial_bounds(&m);
        let x = PI / (2.0 * quad_k(&m).unwrap());
        assert!(p.c28_lower < x && x < p.c28_upper);
        assert_eq!(p.c28_lower, 1.0 - 1.0 / 16.0 - 7.0 / 1024.0);
        let m9 = modulus(0.9);
        assert!(quad_k(&m9).unwrap() > FRAC_PI_2 * 1.2025);
        assert!(lemma26_margin(&m9).unwrap() > 0.0);
        let (lo, hi) = corollary28_margins(&m).unwrap();
        assert!((lo - (x - p.c28_lower)).abs() < 1e-14);
        assert!((hi - (p.c28_upper - x)).abs() < 1e-14);
        let z = k_polynomial_bounds(&modulus(0.0));
        assert_eq!((z.c28_lower, z.c28_upper, z.l26_lower), (1.0, 1.0, FRAC_PI_2));
    }

    #[test]
    fn margins_positive_at_tiny_r() {
        let m = modulus(3e-7);
        let (a, b) = k_envelope_margins(&m).unwrap();
        assert!(a > 0.0 && b > 0.0);
        let (a, b) = e_envelope_margins(&m).unwrap();
        assert!(a > 0.0 && b > 0.0, "{a} {b}");
        let (a, b) = corollary28_margins(&m).unwrap();
        assert!(a > 0.0 && b > 0.0, "{a} {b} {}", eta_unchecked(&m) + 5.0 / 64.0);
        assert!(lemma26_margin(&m).unwrap() > 0.0);
    }
}
