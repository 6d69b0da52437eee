use std::f64::consts::{FRAC_PI_2, PI};

use agmb_core::composite::*;
use agmb_core::elliptic::quadrature::{quad_e, quad_k};
use agmb_core::elliptic::*;
use agmb_core::means::{contraharmonic, quadratic, PositivePair};

fn grid99() -> impl Iterator<Item = Modulus> {
    (1..=99).map(|i| Modulus::new(i as f64 / 100.0).unwrap())
}

#[test]
fn gauss_identity_on_99_points() {
    for m in grid99() {
        let comp = Modulus::new(m.r_prime()).unwrap();
        let ag = agm_value(&PositivePair::new(1.0, m.r()).unwrap());
        assert!((ag * ell_k(&comp) - FRAC_PI_2).abs() <= 1e-13, "r={}", m.r());
    }
}

#[test]
fn agrees_with_quadrature() {
    for m in grid99() {
        assert!((ell_k(&m) - quad_k(&m).unwrap()).abs() <= 1e-10);
        assert!((ell_e(&m) - quad_e(&m).unwrap()).abs() <= 1e-10);
    }
}

#[test]
fn legendre_relation() {
    for m in grid99() {
        let c = Modulus::new(m.r_prime()).unwrap();
        let (k, e) = ell_ke(&m);
        let (kc, ec) = ell_ke(&c);
        assert!((e * kc + ec * k - k * kc - FRAC_PI_2).abs() < 1e-12, "r={}", m.r());
    }
}

#[test]
fn landen_identities() {
    for m in grid99() {
        let (r, (k, e)) = (m.r(), ell_ke(&m));
        assert!((landen_k(&m).unwrap() - (1.0 + r) * k).abs() < 1e-12);
        let rhs = (2.0 * e - (1.0 - r * r) * k) / (1.0 + r);
        assert!((landen_e(&m).unwrap() - rhs).abs() < 1e-12);
    }
}

#[test]
fn derivative_formulas_match_central_differences() {
    let h = 1e-5;
    let diff = |f: &dyn Fn(&Modulus) -> f64, r: f64| {
        (f(&Modulus::new(r + h).unwrap()) - f(&Modulus::new(r - h).unwrap())) / (2.0 * h)
    };
    for i in 1..=9 {
        let r = i as f64 / 10.0;
        let m = Modulus::new(r).unwrap();
        let cases: [(f64, f64); 4] = [
            (d_k(&m).unwrap(), diff(&ell_k, r)),
            (d_e(&m).unwrap(), diff(&ell_e, r)),
            (d_e_minus_rp2_k(&m), diff(&e_minus_rp2_k, r)),
            (d_k_minus_e(&m), diff(&k_minus_e, r)),
        ];
        for (j, (exact, numeric)) in cases.iter().enumerate() {
            assert!((exact - numeric).abs() <= 1e-6 * exact.abs(), "formula {j} at r={r}");
        }
    }
}

#[test]
fn agm_converges_quadratically() {
    for (a, b) in [(1.0, 1e-6), (24.0, 6.0), (1e10, 1.0), (1.0, 0.999)] {
        let (_, trace) = agm(&PositivePair::new(a, b).unwrap(), DEFAULT_AGM_TOL).unwrap();
        let g = &trace.gap_history;
        assert!(trace.iterations < MAX_AGM_ITERATIONS);
        for w in g.windows(2) {
            if w[0] < 1e-2 * b && w[1] > 0.0 {
                let floor = 8.0 * f64::EPSILON * a;
                assert!(w[1] <= w[0] * w[0] / (8.0 * b) + floor, "{w:?}");
            }
        }
    }
}

#[test]
fn agm_is_bracketed_by_geometric_and_arithmetic() {
    let p = PositivePair::new(24.0, 6.0).unwrap();
    let v = agm_value(&p);
    assert!(12.0 < v && v < 15.0);
    assert!((v - 13.458171481725615).abs() < 1e-13);
}

#[test]
fn special_values() {
    let half = Modulus::half_sqrt2();
    let k = ell_k(&half);
    let e = ell_e(&half);
    assert!((k - 1.854_074_677_301_372).abs() < 1e-14);
    assert!((e - 1.350_643_881_047_675_5).abs() < 1e-14);
    // Legendre at the self-complementary point: 2EK - K^2 = pi/2
    assert!((2.0 * e * k - k * k - FRAC_PI_2).abs() < 1e-14);
    let zero = Modulus::new(0.0).unwrap();
    assert_eq!(ell_k(&zero), FRAC_PI_2);
    assert_eq!(ell_e(&zero), FRAC_PI_2);
}

#[test]
fn substitution_round_trip() {
    for i in 1..70 {
        let r = i as f64 / 100.0;
        let p = pair_for_modulus(r).unwrap();
        let back = r_substitution(&p).modulus.r();
        assert!((back - r).abs() < 1e-14, "{r}");
        let rp = (1.0 - r * r).sqrt();
        assert!((quadratic(&p) - rp * contraharmonic(&p)).abs() < 1e-13 * quadratic(&p));
    }
}

#[test]
fn closed_form_matches_iterated_composite() {
    for (a, b) in [(1.0, 2.0), (7.0, 1.0), (1.0, 1.0001), (3.0, 1e4)] {
        let p = PositivePair::new(a, b).unwrap();
        let iter = ag_composite(MeanSelector::Quadratic, MeanSelector::Contraharmonic, &p);
        let closed = ag_qc_closed_form(&p);
        assert!((iter - closed).abs() <= 1e-14 * iter, "({a},{b})");
        assert!(quadratic(&p) < closed && closed < contraharmonic(&p));
    }
}

#[test]
fn k_grows_logarithmically_near_one() {
    let m = Modulus::new(1.0 - 1e-12).unwrap();
    let approx = (4.0 / m.r_prime()).ln();
    assert!((ell_k(&m) - approx).abs() < 1e-9);
    assert!(ell_k(&m) < PI * 10.0);
}
