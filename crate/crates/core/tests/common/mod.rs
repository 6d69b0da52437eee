#![allow(dead_code)]

use agmb_core::means::*;

pub const HOMOGENEITY_TOL: f64 = 1e-13;
pub const CONTINUITY_TOL: f64 = 1e-8;
pub const CONTINUITY_OFFSET: f64 = 1e-6;
/// Rounding slack for `min <= M <= max`, in units of the bound.
pub const BRACKET_SLACK: f64 = 4.0 * f64::EPSILON;
/// The strict chain is only asserted when `(max - min)/max` exceeds this;
/// closer pairs collapse to the arithmetic mean by design.
pub const CHAIN_MIN_SPREAD: f64 = 1e-4;

pub type Mean = (&'static str, Box<dyn Fn(&PositivePair) -> f64 + Sync>);

pub fn catalog() -> Vec<Mean> {
    vec![
        ("A", Box::new(arithmetic)),
        ("G", Box::new(geometric)),
        ("Q", Box::new(quadratic)),
        ("C", Box::new(contraharmonic)),
        ("L", Box::new(logarithmic)),
        ("I", Box::new(identric)),
        ("L_-1/2", Box::new(|p| genlog(-0.5, p))),
        ("L_2", Box::new(|p| genlog(2.0, p))),
        ("S_1/2", Box::new(|p| gini(0.5, p))),
        ("S_1", Box::new(|p| gini(1.0, p))),
        ("S_2", Box::new(|p| gini(2.0, p))),
        ("S_7/4,-1/4", Box::new(|p| stolarsky(1.75, -0.25, p))),
        ("S_0.6,1", Box::new(|p| stolarsky(0.6, 1.0, p))),
        ("S_-2,3", Box::new(|p| stolarsky(-2.0, 3.0, p))),
    ]
}

/// Symmetric offsets around a limit branch cancel the first-order term, so
/// the residual measures the mismatch between branch and formula.
fn continuity_residual(f: impl Fn(f64) -> f64, at: f64) -> f64 {
    let mid = 0.5 * (f(at + CONTINUITY_OFFSET) + f(at - CONTINUITY_OFFSET));
    let limit = f(at);
    (mid - limit).abs() / limit
}

/// Every property of the catalog at one pair and scale; returns a
/// description of each failure.
pub fn check_pair(p: &PositivePair, scale: f64) -> Vec<String> {
    let mut fails = Vec::new();
    let (lo, hi) = (p.min(), p.max());
    let scaled = p.scaled(scale).expect("positive scale");
    for (name, m) in catalog() {
        let v = m(p);
        if m(&p.swapped()) != v && (m(&p.swapped()) - v).abs() > 2.0 * f64::EPSILON * v {
            fails.push(format!("{name} symmetry at {p:?}"));
        }
        if (m(&scaled) - scale * v).abs() > HOMOGENEITY_TOL * scale * v {
            fails.push(format!("{name} homogeneity at {p:?} x{scale}"));
        }
        if !(v >= lo * (1.0 - BRACKET_SLACK) && v <= hi * (1.0 + BRACKET_SLACK)) {
            fails.push(format!("{name} bracketing at {p:?}: {v}"));
        }
        let d = PositivePair::new(p.a(), p.a()).unwrap();
        if m(&d) != p.a() {
            fails.push(format!("{name} diagonal at {}", p.a()));
        }
    }
    if (hi - lo) / hi > CHAIN_MIN_SPREAD {
        let chain = [
            geometric(p),
            logarithmic(p),
            identric(p),
            arithmetic(p),
            quadratic(p),
            contraharmonic(p),
        ];
        if !chain.windows(2).all(|w| w[0] < w[1]) {
            fails.push(format!("chain G<L<I<A<Q<C at {p:?}: {chain:?}"));
        }
    }
    for at in [-1.0, 0.0] {
        let res = continuity_residual(|s| genlog(s, p), at);
        if !(res <= CONTINUITY_TOL) {
            fails.push(format!("genlog continuity at p={at} for {p:?}: {res:e}"));
        }
    }
    for (name, f) in [
        ("p=q", Box::new(|s: f64| stolarsky(0.7 + s, 0.7, p)) as Box<dyn Fn(f64) -> f64>),
        ("p=0", Box::new(|s: f64| stolarsky(s, 1.3, p))),
        ("q=0", Box::new(|s: f64| stolarsky(-0.8, s, p))),
    ] {
        let res = continuity_residual(f, 0.0);
        if !(res <= CONTINUITY_TOL) {
            fails.push(format!("stolarsky continuity at {name} for {p:?}: {res:e}"));
        }
    }
    fails
}
