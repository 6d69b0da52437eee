//! Adaptive Simpson quadrature of the defining integrals.
//!
//! This is the reference oracle for the AGM-based evaluations and must not
//! call into them.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::elliptic::Modulus;
use crate::error::{Error, Result};
use crate::means::PositivePair;

pub const ORACLE_TOL: f64 = 1e-13;
pub const ORACLE_MAX_DEPTH: u32 = 40;
const MIN_DEPTH: u32 = 3;

/// Largest modulus accepted by [`quad_k`] and [`quad_e`].
pub const ORACLE_MAX_MODULUS: f64 = 0.999;

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`, bisecting at
/// most `max_depth` times.
pub fn adaptive_simpson<F>(f: F, lo: f64, hi: f64, tol: f64, max_depth: u32) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let f_lo = f(lo);
    let f_hi = f(hi);
    let f_mid = f(0.5 * (lo + hi));
    let whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
    let mut worst_unresolved = 0.0_f64;
    let value = refine(
        &f,
        Panel {
            lo,
            hi,
            f_lo,
            f_mid,
            f_hi,
            whole,
        },
        tol,
        0,
        max_depth,
        &mut worst_unresolved,
    );
    if worst_unresolved > 0.0 {
        return Err(Error::Quadrature {
            tolerance: tol,
            estimate: worst_unresolved,
        });
    }
    Ok(value)
}

#[derive(Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_mid: f64,
    f_hi: f64,
    whole: f64,
}

fn refine<F>(f: &F, p: Panel, tol: f64, depth: u32, max_depth: u32, unresolved: &mut f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let mid = 0.5 * (p.lo + p.hi);
    let f_lm = f(0.5 * (p.lo + mid));
    let f_rm = f(0.5 * (mid + p.hi));
    let left = (mid - p.lo) / 6.0 * (p.f_lo + 4.0 * f_lm + p.f_mid);
    let right = (p.hi - mid) / 6.0 * (p.f_mid + 4.0 * f_rm + p.f_hi);
    let delta = left + right - p.whole;
    let converged = delta.abs() <= 15.0 * tol;
    if depth >= MIN_DEPTH && converged {
        return left + right + delta / 15.0;
    }
    if depth >= max_depth {
        *unresolved = unresolved.max(delta.abs() / 15.0);
        return left + right + delta / 15.0;
    }
    let l = Panel {
        lo: p.lo,
        hi: mid,
        f_lo: p.f_lo,
        f_mid: f_lm,
        f_hi: p.f_mid,
        whole: left,
    };
    let r = Panel {
        lo: mid,
        hi: p.hi,
        f_lo: p.f_mid,
        f_mid: f_rm,
        f_hi: p.f_hi,
        whole: right,
    };
    refine(f, l, 0.5 * tol, depth + 1, max_depth, unresolved)
        + refine(f, r, 0.5 * tol, depth + 1, max_depth, unresolved)
}

fn oracle_range(m: &Modulus, what: &'static str) -> Result<f64> {
    if m.r() > ORACLE_MAX_MODULUS {
        return Err(Error::OutOfDomain {
            what,
            value: m.r(),
            domain: "[0, 0.999]",
        });
    }
    Ok(m.r() * m.r())
}

/// `int_0^{pi/2} (1 - r^2 sin^2 t)^{-1/2} dt`.
pub fn quad_k(m: &Modulus) -> Result<f64> {
    let r2 = oracle_range(m, "quadK")?;
    adaptive_simpson(
        |t| {
            let s = t.sin();
            1.0 / (1.0 - r2 * s * s).sqrt()
        },
        0.0,
        FRAC_PI_2,
        ORACLE_TOL,
        ORACLE_MAX_DEPTH,
    )
}

/// `int_0^{pi/2} (1 - r^2 sin^2 t)^{1/2} dt`.
pub fn quad_e(m: &Modulus) -> Result<f64> {
    let r2 = oracle_range(m, "quadE")?;
    adaptive_simpson(
        |t| {
            let s = t.sin();
            (1.0 - r2 * s * s).sqrt()
        },
        0.0,
        FRAC_PI_2,
        ORACLE_TOL,
        ORACLE_MAX_DEPTH,
    )
}

/// `AG(a, b) = pi / (2 int_0^{pi/2} dt / sqrt(a^2 cos^2 t + b^2 sin^2 t))`.
pub fn quad_agm(p: &PositivePair) -> Result<f64> {
    let (a, b) = (p.a(), p.b());
    let integral = adaptive_simpson(
        |t| {
            let (s, c) = t.sin_cos();
            1.0 / (a * a * c * c + b * b * s * s).sqrt()
        },
        0.0,
        FRAC_PI_2,
        ORACLE_TOL / (a.max(b) * a.max(b)).max(1.0),
        ORACLE_MAX_DEPTH,
    )?;
    Ok(PI / (2.0 * integral))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = adaptive_simpson(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12, 20).unwrap();
        assert!((v - 0.0).abs() < 1e-14);
        let v = adaptive_simpson(|x| x.exp(), 0.0, 1.0, 1e-13, 40).unwrap();
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn depth_limit_is_reported() {
        let err = adaptive_simpson(|x| 1.0 / x.sqrt(), 1e-300, 1.0, 1e-15, 4).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }

    #[test]
    fn integrands_at_zero_modulus() {
        let m = Modulus::new(0.0).unwrap();
        assert!((quad_k(&m).unwrap() - FRAC_PI_2).abs() < 1e-13);
        assert!((quad_e(&m).unwrap() - FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn half_sqrt2_digits() {
        let m = Modulus::half_sqrt2();
        assert_eq!((quad_k(&m).unwrap() * 1e3).floor(), 1854.0);
        assert_eq!((quad_e(&m).unwrap() * 1e3).floor(), 1350.0);
    }

    #[test]
    fn rejects_moduli_near_one() {
        assert!(quad_k(&Modulus::new(0.9995).unwrap()).is_err());
        assert!(quad_e(&Modulus::new(0.9995).unwrap()).is_err());
        assert!(quad_k(&Modulus::new(0.999).unwrap()).is_ok());
    }
}
