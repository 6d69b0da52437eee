mod common;

use agmb_core::grid::random_pairs;
use agmb_core::means::*;
use proptest::prelude::*;

fn pair() -> impl Strategy<Value = PositivePair> {
    (-12.0f64..12.0, -12.0f64..12.0)
        .prop_map(|(x, y)| PositivePair::new(x.exp(), y.exp()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn catalog_properties(p in pair(), s in -8.0f64..8.0) {
        let fails = common::check_pair(&p, s.exp());
        prop_assert!(fails.is_empty(), "{fails:?}");
    }

    #[test]
    fn near_diagonal_pairs_stay_bracketed(a in 1e-3f64..1e3, rel in 1e-15f64..1e-6) {
        let p = PositivePair::new(a, a * (1.0 + rel)).unwrap();
        for (name, m) in common::catalog() {
            let v = m(&p);
            prop_assert!(v >= p.min() * (1.0 - common::BRACKET_SLACK), "{name}");
            prop_assert!(v <= p.max() * (1.0 + common::BRACKET_SLACK), "{name}");
        }
    }

    #[test]
    fn genlog_increases_in_order(p in pair(), s in -3.0f64..3.0) {
        prop_assume!((p.max() - p.min()) / p.max() > 1e-3);
        prop_assert!(genlog(s, &p) < genlog(s + 0.25, &p));
    }
}

#[test]
fn seeded_sweep_has_no_failures() {
    let pairs = random_pairs(20240601, 2000, 1e-4, 1e4);
    let scales = random_pairs(7, 2000, 1e-3, 1e3);
    for (p, s) in pairs.iter().zip(&scales) {
        let fails = common::check_pair(p, s.a());
        assert!(fails.is_empty(), "{fails:?}");
    }
}

#[test]
fn named_values() {
    let p = PositivePair::new(1.0, 4.0).unwrap();
    assert!((logarithmic(&p) - 3.0 / 4f64.ln()).abs() < 1e-15);
    assert!((identric(&p) - (256f64).powf(1.0 / 3.0) / std::f64::consts::E).abs() < 1e-14);
    assert!((genlog(-1.0, &p) - logarithmic(&p)).abs() < 1e-14);
    assert!((genlog(0.0, &p) - identric(&p)).abs() < 1e-14);
    assert!((genlog(1.0, &p) - 2.5).abs() < 1e-14);
    assert!((gini(1.0, &p) - 2.5).abs() < 1e-14);
    assert!((gini(0.5, &p) - 0.3f64.powf(-2.0 / 3.0)).abs() < 1e-14);
}
