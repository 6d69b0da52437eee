//! AGM-type composite means `AG_{X,Y}(a,b) = AG(X(a,b), Y(a,b))` and the
//! reduction of `AG_{Q,C}` to a single elliptic integral.
//!
//! With `a > b` and `r = (a-b)/sqrt(2(a^2+b^2))`, one has `Q = r' C` and
//! `AG_{Q,C} = pi C / (2 K(r))`, with `r` confined to `(0, sqrt(2)/2)`.

use serde::{Deserialize, Serialize};

use crate::elliptic::{ag_ratio, agm_value, Modulus};
use crate::error::Result;
use crate::means::{self, PositivePair};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeanSelector {
    Arithmetic,
    Geometric,
    Quadratic,
    Contraharmonic,
    Logarithmic,
    Identric,
    GenLog(f64),
    Gini(f64),
    Stolarsky(f64, f64),
}

impl MeanSelector {
    pub fn eval(&self, p: &PositivePair) -> f64 {
        match *self {
            MeanSelector::Arithmetic => means::arithmetic(p),
            MeanSelector::Geometric => means::geometric(p),
            MeanSelector::Quadratic => means::quadratic(p),
            MeanSelector::Contraharmonic => means::contraharmonic(p),
            MeanSelector::Logarithmic => means::logarithmic(p),
            MeanSelector::Identric => means::identric(p),
            MeanSelector::GenLog(e) => means::genlog(e, p),
            MeanSelector::Gini(e) => means::gini(e, p),
            MeanSelector::Stolarsky(e, f) => means::stolarsky(e, f, p),
        }
    }
}

/// `AG(X(a,b), Y(a,b))`.
pub fn ag_composite(x: MeanSelector, y: MeanSelector, p: &PositivePair) -> f64 {
    let inner = PositivePair::new(x.eval(p), y.eval(p))
        .expect("means of a positive pair are positive and finite");
    agm_value(&inner)
}

/// Result of mapping a pair to its modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Substitution {
    pub modulus: Modulus,
    /// Set when `a == b`; the modulus is then `0`.
    pub degenerate: bool,
}

/// `r = (a-b)/sqrt(2(a^2+b^2))` with the pair ordered so that `a >= b`.
/// Satisfies `Q(a,b) = sqrt(1-r^2) C(a,b)`.
pub fn r_substitution(p: &PositivePair) -> Substitution {
    let (a, b) = (p.max(), p.min());
    if a == b {
        return Substitution {
            modulus: Modulus::new(0.0).expect("0 is a valid modulus"),
            degenerate: true,
        };
    }
    let r = (a - b) / (std::f64::consts::SQRT_2 * a.hypot(b));
    Substitution {
        modulus: Modulus::new(r).expect("r lies in (0, sqrt(2)/2)"),
        degenerate: false,
    }
}

/// Pair `(a, 1)` with `a > 1` whose substitution modulus is `r`, from the
/// larger root of `(1 - 2r^2) a^2 - 2a + (1 - 2r^2) = 0`.
pub fn pair_for_modulus(r: f64) -> Result<PositivePair> {
    if !(0.0..std::f64::consts::FRAC_1_SQRT_2).contains(&r) {
        return Err(crate::Error::OutOfDomain {
            what: "pair_for_modulus",
            value: r,
            domain: "[0, sqrt(2)/2)",
        });
    }
    let c = 1.0 - 2.0 * r * r;
    // 1 - c^2 = 4 r^2 (1 - r^2)
    let disc = 2.0 * r * ((1.0 - r) * (1.0 + r)).sqrt();
    PositivePair::new((1.0 + disc) / c, 1.0)
}

/// `AG_{Q,C}(a,b) = pi C(a,b) / (2 K(r))`.
pub fn ag_qc_closed_form(p: &PositivePair) -> f64 {
    let sub = r_substitution(p);
    if sub.degenerate {
        return p.a();
    }
    means::contraharmonic(p) * ag_ratio(&sub.modulus).value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::{ell_k, quadrature::quad_k};
    use crate::means::{contraharmonic, quadratic};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn pair(a: f64, b: f64) -> PositivePair {
        PositivePair::new(a, b).unwrap()
    }

    #[test]
    fn composite_examples() {
        let q = MeanSelector::Quadratic;
        let c = MeanSelector::Contraharmonic;
        assert!((ag_composite(q, q, &pair(1.0, 7.0)) - 5.0).abs() < 1e-15);
        assert_eq!(ag_composite(q, c, &pair(3.5, 3.5)), 3.5);
        let p = pair(1.0, 2.0);
        let v = ag_composite(q, c, &p);
        assert!(2.5f64.sqrt() < v && v < 5.0 / 3.0);
    }

    #[test]
    fn substitution_examples() {
        let s = r_substitution(&pair(1.0, 1.0));
        assert!(s.degenerate);
        assert_eq!(s.modulus.r(), 0.0);
        let s = r_substitution(&pair(7.0, 1.0));
        assert!(!s.degenerate);
        assert!((s.modulus.r() - 0.6).abs() < 1e-15);
        assert_eq!(r_substitution(&pair(1.0, 7.0)), s);
        let far = r_substitution(&pair(1e12, 1.0)).modulus.r();
        assert!(far < FRAC_1_SQRT_2 && FRAC_1_SQRT_2 - far < 1e-11);
    }

    #[test]
    fn substitution_identity_for_q_and_c() {
        for (a, b) in [(2.0, 1.0), (1.0, 30.0), (0.01, 0.0100001)] {
            let p = pair(a, b);
            let m = r_substitution(&p).modulus;
            let lhs = quadratic(&p);
            let rhs = m.r_prime() * contraharmonic(&p);
            assert!((lhs - rhs).abs() <= 1e-15 * lhs, "({a}, {b})");
        }
    }

    #[test]
    fn inverse_substitution() {
        let p = pair_for_modulus(0.6).unwrap();
        assert!((p.a() - 7.0).abs() < 1e-14);
        assert_eq!(pair_for_modulus(0.0).unwrap(), pair(1.0, 1.0));
        assert!(pair_for_modulus(FRAC_1_SQRT_2).is_err());
        for r in [1e-8, 0.1, 0.5, 0.7, 0.707] {
            let back = r_substitution(&pair_for_modulus(r).unwrap()).modulus.r();
            assert!((back - r).abs() < 1e-12, "{r}: {back}");
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(ag_qc_closed_form(&pair(2.5, 2.5)), 2.5);
        let p = pair(1.0, 2.0);
        let direct = ag_composite(MeanSelector::Quadratic, MeanSelector::Contraharmonic, &p);
        assert!((ag_qc_closed_form(&p) - direct).abs() < 1e-12);
        // r = 0.6 for (7, 1); oracle K(0.6) by quadrature
        let k = quad_k(&Modulus::new(0.6).unwrap()).unwrap();
        let expected = PI * 6.25 / (2.0 * k);
        assert!((ag_qc_closed_form(&pair(7.0, 1.0)) - expected).abs() < 1e-12);
        assert!((ell_k(&Modulus::new(0.6).unwrap()) - k).abs() < 1e-12);
    }
}
