//! Classical bounds for `AG(a,b)` and `AG(1,r)`.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use super::report::{Sample, Side, VerificationReport};
use crate::elliptic::agm_value;
use crate::means::{arithmetic, genlog, gini, logarithmic, stolarsky, PositivePair};

/// Exponents `p` used for `AG < sqrt(S_{p,1} S_{1-p,1})`.
pub const STOLARSKY_PRODUCT_ORDERS: [f64; 4] = [0.6, 0.7, 0.8, 0.9];

fn agm_of(a: f64, b: f64) -> f64 {
    agm_value(&PositivePair::new(a, b).expect("positive arguments"))
}

fn pair_check<F>(label: &str, side: Side, grid: &str, pairs: &[PositivePair], margin: F) -> VerificationReport
where
    F: Fn(&PositivePair, f64) -> f64 + Sync,
{
    VerificationReport::evaluate(label, None, side, grid, pairs, |p| {
        let ag = agm_value(p);
        Sample {
            a: Some(p.a()),
            b: Some(p.b()),
            r: p.min() / p.max(),
            margin: margin(p, ag),
        }
    })
}

fn modulus_check<F>(label: &str, side: Side, grid: &str, moduli: &[f64], margin: F) -> VerificationReport
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    VerificationReport::evaluate(label, None, side, grid, moduli, |&r| {
        let ag = agm_of(1.0, r);
        Sample {
            a: Some(1.0),
            b: Some(r),
            r,
            margin: margin(r, ag),
        }
    })
}

/// Runs every classical inequality: the pair forms on `pairs` and the
/// `AG(1, r)` forms on `moduli` (which must lie in `(0, 1)`).
pub fn prior_bounds_suite(
    pairs: &[PositivePair],
    pair_grid: &str,
    moduli: &[f64],
    modulus_grid: &str,
) -> Vec<VerificationReport> {
    let mut out = vec![
        pair_check("L<AG", Side::Lower, pair_grid, pairs, |p, ag| ag - logarithmic(p)),
        pair_check("AG<L(a^1.5,b^1.5)^(2/3)", Side::Upper, pair_grid, pairs, |p, ag| {
            let lifted = PositivePair::new(p.a().powf(1.5), p.b().powf(1.5)).expect("positive");
            logarithmic(&lifted).powf(2.0 / 3.0) - ag
        }),
        pair_check("AG<(pi/2)L", Side::Upper, pair_grid, pairs, |p, ag| {
            FRAC_PI_2 * logarithmic(p) - ag
        }),
        pair_check("L_-1<AG", Side::Lower, pair_grid, pairs, |p, ag| ag - genlog(-1.0, p)),
        pair_check("AG<L_-1/2", Side::Upper, pair_grid, pairs, |p, ag| genlog(-0.5, p) - ag),
        pair_check("harmonic(L,A;3/4)<AG", Side::Lower, pair_grid, pairs, |p, ag| {
            ag - harmonic_blend(0.75, logarithmic(p), arithmetic(p))
        }),
        pair_check("AG<harmonic(L,A;2/pi)", Side::Upper, pair_grid, pairs, |p, ag| {
            harmonic_blend(FRAC_2_PI, logarithmic(p), arithmetic(p)) - ag
        }),
        pair_check("S_1/2<AG", Side::Lower, pair_grid, pairs, |p, ag| ag - gini(0.5, p)),
        pair_check("AG<S_1", Side::Upper, pair_grid, pairs, |p, ag| gini(1.0, p) - ag),
        pair_check("S_7/4,-1/4<AG", Side::Lower, pair_grid, pairs, |p, ag| {
            ag - stolarsky(1.75, -0.25, p)
        }),
        pair_check("AG<A^1/4L^3/4", Side::Upper, pair_grid, pairs, |p, ag| {
            arithmetic(p).powf(0.25) * logarithmic(p).powf(0.75) - ag
        }),
    ];
    for s in STOLARSKY_PRODUCT_ORDERS {
        out.push(pair_check(
            &format!("AG<sqrt(S_{s},1 S_{:.1},1)", 1.0 - s),
            Side::Upper,
            pair_grid,
            pairs,
            |p, ag| (stolarsky(s, 1.0, p) * stolarsky(1.0 - s, 1.0, p)).sqrt() - ag,
        ));
    }
    out.extend([
        modulus_check("(1+sqrt r)/2 AG(1,sqrt r)<AG(1,r)", Side::Lower, modulus_grid, moduli, |r, ag| {
            ag - 0.5 * (1.0 + r.sqrt()) * agm_of(1.0, r.sqrt())
        }),
        modulus_check("AG(1,r)<pi/(2log(4/r))", Side::Upper, modulus_grid, moduli, |r, ag| {
            PI / (2.0 * (4.0 / r).ln()) - ag
        }),
        modulus_check("AG(1,r)<pi(1-r^2/9)/(2log(4/r))", Side::Upper, modulus_grid, moduli, |r, ag| {
            PI * (1.0 - r * r / 9.0) / (2.0 * (4.0 / r).ln()) - ag
        }),
        modulus_check("4pi/((9-r^2)log(4/r))<AG(1,r)", Side::Lower, modulus_grid, moduli, |r, ag| {
            ag - 4.0 * PI / ((9.0 - r * r) * (4.0 / r).ln())
        }),
    ]);
    out
}

/// `1 / (t/x + (1-t)/y)`
fn harmonic_blend(t: f64, x: f64, y: f64) -> f64 {
    1.0 / (t / x + (1.0 - t) / y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: f64, b: f64) -> PositivePair {
        PositivePair::new(a, b).unwrap()
    }

    #[test]
    fn examples_at_one_four() {
        let p = pair(1.0, 4.0);
        let ag = agm_value(&p);
        assert!(logarithmic(&p) < ag);
        assert!(ag < logarithmic(&pair(1.0, 8.0)).powf(2.0 / 3.0));
        assert!(harmonic_blend(0.75, logarithmic(&p), arithmetic(&p)) < ag);
        assert!(ag < harmonic_blend(FRAC_2_PI, logarithmic(&p), arithmetic(&p)));
        let prod = (stolarsky(0.7, 1.0, &p) * stolarsky(0.3, 1.0, &p)).sqrt();
        assert!(ag < prod);
    }

    #[test]
    fn pair_forms_hold_on_small_grid() {
        let pairs: Vec<PositivePair> = (0..60)
            .map(|i| pair((1.1f64.ln() + i as f64 * 0.2).exp(), 1.0))
            .collect();
        let moduli: Vec<f64> = (1..60).map(|i| i as f64 / 100.0).collect();
        for rep in prior_bounds_suite(&pairs, "p", &moduli, "m") {
            assert!(rep.holds(), "{}: {:?}", rep.label, rep.violations.first());
        }
    }

    #[test]
    fn sharp_blend_weights_are_tight_at_the_ends() {
        // 3/4 is approached near the diagonal, 2/pi at extreme ratios
        let near = pair(1.01, 1.0);
        let x = 1.0 / agm_value(&near);
        let (l, a) = (1.0 / logarithmic(&near), 1.0 / arithmetic(&near));
        let weight = (x - a) / (l - a);
        assert!((weight - 0.75).abs() < 1e-3, "{weight}");
        let far = pair(1e12, 1.0);
        let x = 1.0 / agm_value(&far);
        let (l, a) = (1.0 / logarithmic(&far), 1.0 / arithmetic(&far));
        let weight = (x - a) / (l - a);
        assert!((weight - FRAC_2_PI).abs() < 0.05, "{weight}");
    }
}
