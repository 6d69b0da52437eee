//! Named verification suites and their flat, serializable results.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::time::Instant;

use serde::{Deserialize, Deserializer, Serialize};

use crate::bounds::{
    corollary28_margins, e_envelope_margins, k_envelope, k_envelope_margins, lemma26_margin,
    prior_bounds_suite, sharp_constants, sharpness_probe_t34, verify_theorem, Sample, Side,
    TheoremId, VerificationReport, Violation, R_MAX,
};
use crate::elliptic::quadrature::{quad_e, quad_k};
use crate::elliptic::{
    ag_ratio, agm_value, d_e, d_e_minus_rp2_k, d_k, d_k_minus_e, e_deficit, e_minus_rp2_k, ell_e,
    ell_ke, k_minus_e, landen_e, landen_k, Modulus,
};
use crate::error::{Error, Result};
use crate::grid::{GridKind, GridSpec};
use crate::lemmafn::{
    self, phi_deficit, Direction, LemmaFn, DEFAULT_PROBE_INSET,
    DEFAULT_PROBE_POINTS,
};
use crate::means::PositivePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteId {
    T31,
    T32,
    T33,
    T34,
    Sharpness,
    Envelopes,
    Corollary28,
    Lemmas,
    Prior,
    Identities,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::T31,
        SuiteId::T32,
        SuiteId::T33,
        SuiteId::T34,
        SuiteId::Sharpness,
        SuiteId::Envelopes,
        SuiteId::Corollary28,
        SuiteId::Lemmas,
        SuiteId::Prior,
        SuiteId::Identities,
    ];

    pub fn token(&self) -> &'static str {
        match self {
            SuiteId::T31 => "T31",
            SuiteId::T32 => "T32",
            SuiteId::T33 => "T33",
            SuiteId::T34 => "T34",
            SuiteId::Sharpness => "sharpness",
            SuiteId::Envelopes => "envelopes",
            SuiteId::Corollary28 => "corollary28",
            SuiteId::Lemmas => "lemmas",
            SuiteId::Prior => "prior",
            SuiteId::Identities => "identities",
        }
    }

    /// Parses a comma-separated list of suite ids; `all` selects every suite.
    pub fn parse_list(s: &str) -> Result<Vec<SuiteId>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            if part.eq_ignore_ascii_case("all") {
                out.extend(Self::ALL);
                continue;
            }
            let id = Self::ALL
                .into_iter()
                .find(|id| id.token().eq_ignore_ascii_case(part))
                .ok_or_else(|| Error::UnknownSuite(part.to_string()))?;
            out.push(id);
        }
        out.dedup();
        Ok(out)
    }

    fn theorem(&self) -> Option<TheoremId> {
        match self {
            SuiteId::T31 => Some(TheoremId::T31),
            SuiteId::T32 => Some(TheoremId::T32),
            SuiteId::T33 => Some(TheoremId::T33),
            SuiteId::T34 => Some(TheoremId::T34),
            _ => None,
        }
    }

    pub fn default_grid(&self) -> GridSpec {
        let spec = match self {
            SuiteId::T31 | SuiteId::T32 | SuiteId::T33 | SuiteId::T34 => {
                GridSpec::new(GridKind::RatioLog, 10_000, 1.000001, 1e6)
            }
            SuiteId::Prior => GridSpec::new(GridKind::RatioLog, 1000, 1.1, 1e6),
            SuiteId::Identities => GridSpec::new(GridKind::ModulusUniform, 99, 0.01, 0.99),
            SuiteId::Lemmas => GridSpec::new(
                GridKind::ModulusUniform,
                DEFAULT_PROBE_POINTS,
                DEFAULT_PROBE_INSET,
                R_MAX - DEFAULT_PROBE_INSET,
            ),
            SuiteId::Sharpness | SuiteId::Envelopes | SuiteId::Corollary28 => {
                GridSpec::new(GridKind::ModulusEndpointWeighted, 4096, 0.0, R_MAX)
            }
        };
        spec.expect("built-in grids are valid")
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteOptions {
    pub grid: Option<GridSpec>,
    /// Lower-bound parameter override for the theorem suites.
    pub alpha: Option<f64>,
    /// Upper-bound parameter override for the theorem suites.
    pub beta: Option<f64>,
    /// Draws ratio-grid pairs at random from this seed instead of log-spacing.
    pub seed: Option<u64>,
}

impl SuiteOptions {
    fn grid_label(&self, grid: &GridSpec) -> String {
        match (grid.kind, self.seed) {
            (GridKind::RatioLog, Some(seed)) => format!("{grid}+seed={seed}"),
            _ => grid.to_string(),
        }
    }
}

fn nan_for_null<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

/// One checked inequality (or group of checks) in report form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub grid: String,
    pub params: BTreeMap<String, f64>,
    #[serde(deserialize_with = "nan_for_null")]
    pub min_margin: f64,
    pub n_points: usize,
    pub violations: Vec<Violation>,
    pub runtime_ms: f64,
}

impl SuiteResult {
    fn from_report(
        suite: &str,
        rep: &VerificationReport,
        params: BTreeMap<String, f64>,
        runtime_ms: f64,
    ) -> Self {
        Self {
            suite: if rep.label.starts_with(suite) {
                rep.label.clone()
            } else {
                format!("{suite}/{}", rep.label)
            },
            grid: rep.grid.clone(),
            params,
            min_margin: rep.min_margin,
            n_points: rep.n_points(),
            violations: rep.violations.clone(),
            runtime_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn params(entries: &[(&str, f64)]) -> BTreeMap<String, f64> {
    entries.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs one suite. Grid overrides apply to the suites that sweep a single
/// grid; the identity and lemma suites use fixed point sets.
pub fn run_suite(id: SuiteId, opts: &SuiteOptions) -> Result<Vec<SuiteResult>> {
    let grid = opts.grid.unwrap_or_else(|| id.default_grid());
    if let Some(t) = id.theorem() {
        return run_theorem(t, &grid, opts);
    }
    match id {
        SuiteId::Sharpness => run_sharpness(&grid),
        SuiteId::Envelopes => run_envelopes(&grid),
        SuiteId::Corollary28 => run_corollary28(&grid),
        SuiteId::Lemmas => run_lemmas(),
        SuiteId::Prior => run_prior(&grid, opts),
        SuiteId::Identities => Ok(run_identities()),
        _ => unreachable!("theorem suites handled above"),
    }
}

pub fn run_suites(ids: &[SuiteId], opts: &SuiteOptions) -> Result<Vec<SuiteResult>> {
    let mut out = Vec::new();
    for &id in ids {
        out.extend(run_suite(id, opts)?);
    }
    Ok(out)
}

fn run_theorem(t: TheoremId, grid: &GridSpec, opts: &SuiteOptions) -> Result<Vec<SuiteResult>> {
    let start = Instant::now();
    let (sharp_lo, sharp_hi) = t.sharp_params();
    let alpha = opts.alpha.unwrap_or(sharp_lo);
    let beta = opts.beta.unwrap_or(sharp_hi);
    let pairs = grid.pairs_seeded(opts.seed)?;
    let (lo, hi) = verify_theorem(t, alpha, beta, &pairs, &opts.grid_label(grid))?;
    let mut out = Vec::new();
    let ms = elapsed_ms(start);
    let p = params(&[("alpha", alpha), ("beta", beta)]);
    out.push(SuiteResult::from_report(t.name(), &lo, p.clone(), ms));
    out.push(SuiteResult::from_report(t.name(), &hi, p, ms));
    if t == TheoremId::T34 {
        out.extend(t34_proof_steps(grid)?);
    }
    Ok(out)
}

/// The quartic comparisons used in the proof of the T34 endpoints.
fn t34_proof_steps(grid: &GridSpec) -> Result<Vec<SuiteResult>> {
    let start = Instant::now();
    let rs = if grid.is_modulus() {
        grid.half_range_moduli()?
    } else {
        GridSpec::new(GridKind::ModulusEndpointWeighted, 4096, 0.0, R_MAX)?.values()
    };
    let d4 = sharp_constants().delta4;
    let split = 33.0 / 50.0;
    let g = format!("moduli of {grid}");
    let modulus = |r: f64| Modulus::new(r).expect("grid moduli lie in (0, 1)");
    let reports = [
        VerificationReport::evaluate("Phi_sqrt2<1-r^2/4-r^4/4", None, Side::Upper, g.clone(), &rs, |&r| {
            let pd = phi_deficit(SQRT_2, &modulus(r));
            Sample::modulus_only(r, pd - 0.25 * r * r - 0.25 * r.powi(4))
        }),
        VerificationReport::evaluate("pi/(2K)-Phi_sqrt2>9r^4/64", None, Side::Lower, g.clone(), &rs, |&r| {
            let m = modulus(r);
            let u = ag_ratio(&m).deficit;
            Sample::modulus_only(r, phi_deficit(SQRT_2, &m) - u - 9.0 / 64.0 * r.powi(4))
        }),
        VerificationReport::evaluate(
            "pi/(2K)-Phi_d4<-3r^4/64 on (0,33/50)",
            None,
            Side::Upper,
            g.clone(),
            &rs.iter().copied().filter(|&r| r < split).collect::<Vec<_>>(),
            |&r| {
                let m = modulus(r);
                let u = ag_ratio(&m).deficit;
                Sample::modulus_only(r, u - phi_deficit(d4, &m) - 3.0 / 64.0 * r.powi(4))
            },
        ),
        VerificationReport::evaluate(
            "K Phi_d4>pi/2 on (33/50,sqrt2/2)",
            None,
            Side::Lower,
            g,
            &rs.iter().copied().filter(|&r| r > split).collect::<Vec<_>>(),
            |&r| Sample::modulus_only(r, k_phi_excess(d4, r)),
        ),
    ];
    let ms = elapsed_ms(start);
    Ok(reports
        .iter()
        .map(|rep| SuiteResult::from_report("T34", rep, params(&[("delta4", d4)]), ms))
        .collect())
}

/// `K(r) Phi_lambda(r) - pi/2`.
pub fn k_phi_excess(lambda: f64, r: f64) -> f64 {
    let m = Modulus::new(r).expect("modulus in (0, 1)");
    let ratio = ag_ratio(&m);
    FRAC_PI_2 * (ratio.deficit - phi_deficit(lambda, &m)) / ratio.value
}

/// Each sharp endpoint moved by `1e-3` the wrong way must produce a violation,
/// and the T34 intermediate-parameter probe must flag both ends.
fn run_sharpness(grid: &GridSpec) -> Result<Vec<SuiteResult>> {
    const EPS: f64 = 1e-3;
    let pairs = grid.pairs()?;
    let mut out = Vec::new();
    for t in TheoremId::ALL {
        for side in [Side::Lower, Side::Upper] {
            let start = Instant::now();
            let (alpha, beta) = t.perturbed_params(side, EPS);
            let (lo, hi) = verify_theorem(t, alpha, beta, &pairs, &grid.to_string())?;
            let rep = if side == Side::Lower { lo } else { hi };
            // expected to fail: report the worst point with its margin negated
            let worst = rep
                .margins
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap_or(0);
            let p = &pairs[worst];
            let sample = Sample {
                a: Some(p.a()),
                b: Some(p.b()),
                r: crate::composite::r_substitution(p).modulus.r(),
                margin: -rep.min_margin,
            };
            let flipped = VerificationReport::from_samples(
                format!("{}.{}+forbidden", t.name(), side.name()),
                rep.family,
                side,
                grid.to_string(),
                &[sample],
            );
            out.push(SuiteResult::from_report(
                "sharpness",
                &flipped,
                params(&[("alpha", alpha), ("beta", beta), ("eps", EPS)]),
                elapsed_ms(start),
            ));
        }
    }
    for p_mid in [0.86, 0.90, 0.94] {
        let start = Instant::now();
        let probe = sharpness_probe_t34(p_mid)?;
        let flag = |b: bool| if b { 1.0 } else { -1.0 };
        let samples = [
            Sample::modulus_only(
                probe.first_lower_violation.unwrap_or(f64::NAN),
                flag(probe.violates_lower_near_zero),
            ),
            Sample::modulus_only(
                probe.last_upper_violation.unwrap_or(f64::NAN),
                flag(probe.violates_upper_near_half),
            ),
        ];
        let rep = VerificationReport::from_samples(
            "T34.probe",
            None,
            Side::Lower,
            format!("modulus-uniform:{}:{}:{}", probe.n_points, crate::bounds::PROBE_INSET, R_MAX - crate::bounds::PROBE_INSET),
            &samples,
        );
        out.push(SuiteResult::from_report(
            "sharpness",
            &rep,
            params(&[("p", p_mid)]),
            elapsed_ms(start),
        ));
    }
    Ok(out)
}

fn run_envelopes(grid: &GridSpec) -> Result<Vec<SuiteResult>> {
    let start = Instant::now();
    let rs = grid.half_range_moduli()?;
    let g = grid.to_string();
    let k: Vec<(f64, f64, f64)> = rs
        .iter()
        .map(|&r| {
            let (lo, hi) = k_envelope_margins(&Modulus::new(r)?)?;
            Ok((r, lo, hi))
        })
        .collect::<Result<_>>()?;
    let e: Vec<(f64, f64, f64)> = rs
        .iter()
        .map(|&r| {
            let (lo, hi) = e_envelope_margins(&Modulus::new(r)?)?;
            Ok((r, lo, hi))
        })
        .collect::<Result<_>>()?;
    let width: Vec<Sample> = rs
        .iter()
        .map(|&r| {
            let env = k_envelope(&Modulus::new(r)?)?;
            Ok(Sample::modulus_only(r, env.big_m_excess - env.m_excess))
        })
        .collect::<Result<_>>()?;
    let lo = |v: &[(f64, f64, f64)]| v.iter().map(|x| Sample::modulus_only(x.0, x.1)).collect::<Vec<_>>();
    let hi = |v: &[(f64, f64, f64)]| v.iter().map(|x| Sample::modulus_only(x.0, x.2)).collect::<Vec<_>>();
    let reports = [
        VerificationReport::from_samples("(pi/2)m<K", None, Side::Lower, g.clone(), &lo(&k)),
        VerificationReport::from_samples("K<(pi/2)M", None, Side::Upper, g.clone(), &hi(&k)),
        VerificationReport::from_samples("pi/(2M)<E", None, Side::Lower, g.clone(), &lo(&e)),
        VerificationReport::from_samples("E<pi/(2sqrt(r')m)", None, Side::Upper, g.clone(), &hi(&e)),
        VerificationReport::from_samples("m<M", None, Side::Upper, g, &width),
    ];
    let ms = elapsed_ms(start);
    Ok(reports
        .iter()
        .map(|r| SuiteResult::from_report("envelopes", r, BTreeMap::new(), ms))
        .collect())
}

fn run_corollary28(grid: &GridSpec) -> Result<Vec<SuiteResult>> {
    let start = Instant::now();
    let rs = grid.half_range_moduli()?;
    let g = grid.to_string();
    let mut lower = Vec::with_capacity(rs.len());
    let mut upper = Vec::with_capacity(rs.len());
    let mut quad = Vec::with_capacity(rs.len());
    for &r in &rs {
        let m = Modulus::new(r)?;
        let (lo, hi) = corollary28_margins(&m)?;
        lower.push(Sample::modulus_only(r, lo));
        upper.push(Sample::modulus_only(r, hi));
        quad.push(Sample::modulus_only(r, lemma26_margin(&m)?));
    }
    let unit = GridSpec::new(GridKind::ModulusEndpointWeighted, grid.count, 0.0, 1.0)?;
    let unit_samples: Vec<Sample> = unit
        .values()
        .into_iter()
        .map(|r| Ok(Sample::modulus_only(r, lemma26_margin(&Modulus::new(r)?)?)))
        .collect::<Result<_>>()?;
    let reports = [
        VerificationReport::from_samples("1-r^2/4-7r^4/64<pi/(2K)", None, Side::Lower, g.clone(), &lower),
        VerificationReport::from_samples("pi/(2K)<1-r^2/4-5r^4/64", None, Side::Upper, g.clone(), &upper),
        VerificationReport::from_samples("K>(pi/2)(1+r^2/4)", None, Side::Lower, g, &quad),
        VerificationReport::from_samples(
            "K>(pi/2)(1+r^2/4) on (0,1)",
            None,
            Side::Lower,
            unit.to_string(),
            &unit_samples,
        ),
    ];
    let ms = elapsed_ms(start);
    Ok(reports
        .iter()
        .map(|r| SuiteResult::from_report("corollary28", r, BTreeMap::new(), ms))
        .collect())
}

/// Monotone probes, endpoint limits and stated ranges of the auxiliary
/// functions.
fn run_lemmas() -> Result<Vec<SuiteResult>> {
    let c = sharp_constants();
    let inset = DEFAULT_PROBE_INSET;
    let n = DEFAULT_PROBE_POINTS;
    let half_lo = inset;
    let half_hi = R_MAX - inset;
    let unit_hi = 1.0 - inset;
    let probes: [(LemmaFn, Direction, f64, f64); 13] = [
        (LemmaFn::F, Direction::Increasing, half_lo, half_hi),
        (LemmaFn::G, Direction::Decreasing, half_lo, half_hi),
        (LemmaFn::H, Direction::Increasing, half_lo, half_hi),
        (LemmaFn::Mu, Direction::Increasing, half_lo, unit_hi),
        (LemmaFn::Eta, Direction::Decreasing, half_lo, half_hi),
        (LemmaFn::Xi, Direction::Increasing, half_lo, R_MAX),
        (LemmaFn::Nu, Direction::Decreasing, 0.0, 1.0),
        (LemmaFn::ExcessOverR2, Direction::Increasing, half_lo, unit_hi),
        (LemmaFn::SqrtComplementK, Direction::Decreasing, 0.0, unit_hi),
        (LemmaFn::ExcessOverR2K, Direction::Decreasing, half_lo, unit_hi),
        (LemmaFn::KMinusEOverR2, Direction::Increasing, half_lo, unit_hi),
        (LemmaFn::KOverSqrtR, Direction::Decreasing, half_lo, R_MAX),
        (LemmaFn::SqrtRPhiDelta4, Direction::Decreasing, 0.66, half_hi),
    ];
    let mut out = Vec::new();
    for (f, dir, lo, hi) in probes {
        let start = Instant::now();
        let step = (hi - lo) / (n - 1) as f64;
        let samples: Vec<f64> = (0..n)
            .map(|i| f.eval(if i == n - 1 { hi } else { lo + step * i as f64 }))
            .collect::<Result<_>>()?;
        let dir_sign = match dir {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
        };
        let steps: Vec<Sample> = samples
            .windows(2)
            .enumerate()
            .map(|(i, w)| Sample::modulus_only(lo + step * i as f64, dir_sign * (w[1] - w[0])))
            .collect();
        let vr = VerificationReport::from_samples(
            format!("{} {}", f.name(), direction_name(dir)),
            None,
            Side::Lower,
            format!("modulus-uniform:{n}:{lo}:{hi}"),
            &steps,
        );
        out.push(SuiteResult::from_report("lemmas", &vr, BTreeMap::new(), elapsed_ms(start)));
    }

    let start = Instant::now();
    let near0 = 1e-7;
    let near_half = R_MAX - 1e-9;
    let tol = 1e-6;
    let limits: [(&str, f64, f64); 10] = [
        ("f(0+)=1/2", lemmafn::f_lemma(near0)?, 0.5),
        ("f(sqrt2/2-)=delta1", lemmafn::f_lemma(near_half)?, c.delta1),
        ("g(0+)=1/2", lemmafn::g_lemma(near0)?, 0.5),
        ("g(sqrt2/2-)=delta2", lemmafn::g_lemma(near_half)?, c.delta2),
        ("h(0+)=1/2", lemmafn::h_lemma(near0)?, 0.5),
        ("h(sqrt2/2-)=delta3", lemmafn::h_lemma(near_half)?, c.delta3),
        ("mu(0+)=1/4", lemmafn::mu_lemma(near0)?, 0.25),
        ("eta(0+)=-5/64", lemmafn::eta_lemma(near0)?, -5.0 / 64.0),
        ("eta(sqrt2/2-)", lemmafn::eta_lemma(near_half)?, lemmafn::eta_right_limit()),
        ("xi(0+)=-pi/2", lemmafn::xi(near0)?, -FRAC_PI_2),
    ];
    for (label, value, limit) in limits {
        let r = if label.contains("0+") { near0 } else { near_half };
        let rep = VerificationReport::from_samples(
            label,
            None,
            Side::Lower,
            "endpoint",
            &[Sample::modulus_only(r, tol - (value - limit).abs())],
        );
        out.push(SuiteResult::from_report(
            "lemmas",
            &rep,
            params(&[("value", value), ("limit", limit), ("tol", tol)]),
            elapsed_ms(start),
        ));
    }

    // printed values, compared by their leading digits
    let nu = lemmafn::nu_poly(0.66);
    let xi_half = lemmafn::xi(R_MAX)?;
    for (label, value, digits, scale) in [
        ("nu(33/50)=5.9588...", nu, 59588.0, 1e4),
        ("xi(sqrt2/2)=-0.07982...", xi_half, -7982.0, 1e5),
    ] {
        let trunc = (value * scale).trunc();
        let rep = VerificationReport::from_samples(
            label,
            None,
            Side::Lower,
            "point",
            &[Sample::modulus_only(
                if label.starts_with("nu") { 0.66 } else { R_MAX },
                if trunc == digits { 1.0 } else { -1.0 },
            )],
        );
        out.push(SuiteResult::from_report("lemmas", &rep, params(&[("value", value)]), 0.0));
    }

    // ranges of the sampled functions inside their stated open intervals
    let slack = 1e-9;
    let ranges: [(LemmaFn, f64, f64, f64, f64); 5] = [
        (LemmaFn::F, half_lo, half_hi, 0.5, c.delta1),
        (LemmaFn::G, half_lo, half_hi, c.delta2, 0.5),
        (LemmaFn::H, half_lo, half_hi, 0.5, c.delta3),
        (LemmaFn::Mu, half_lo, unit_hi, 0.25, f64::INFINITY),
        (LemmaFn::Eta, half_lo, half_hi, lemmafn::eta_right_limit(), -5.0 / 64.0),
    ];
    for (f, lo, hi, range_lo, range_hi) in ranges {
        let step = (hi - lo) / (n - 1) as f64;
        let samples: Vec<Sample> = (0..n)
            .map(|i| {
                let r = lo + step * i as f64;
                let v = f.eval(r)?;
                Ok(Sample::modulus_only(r, (v - range_lo + slack).min(range_hi + slack - v)))
            })
            .collect::<Result<_>>()?;
        let rep = VerificationReport::from_samples(
            format!("{} range", f.name()),
            None,
            Side::Lower,
            format!("modulus-uniform:{n}:{lo}:{hi}"),
            &samples,
        );
        out.push(SuiteResult::from_report(
            "lemmas",
            &rep,
            params(&[("lo", range_lo), ("hi", range_hi), ("slack", slack)]),
            0.0,
        ));
    }

    // 2E/pi > 1 - r^2/4 - r^4/8 and Phi_d4 > 1 - r^2/4 below 33/50
    let grid = GridSpec::new(GridKind::ModulusEndpointWeighted, n, 0.0, R_MAX)?;
    let rs = grid.values();
    let e_samples: Vec<Sample> = rs
        .iter()
        .map(|&r| {
            let m = Modulus::new(r)?;
            Ok(Sample::modulus_only(r, 0.25 * r * r + 0.125 * r.powi(4) - e_deficit(&m)))
        })
        .collect::<Result<_>>()?;
    let below: Vec<f64> = rs.iter().copied().filter(|&r| r < 0.66).collect();
    let phi_samples: Vec<Sample> = below
        .iter()
        .map(|&r| {
            let m = Modulus::new(r)?;
            Ok(Sample::modulus_only(r, 0.25 * r * r - phi_deficit(c.delta4, &m)))
        })
        .collect::<Result<_>>()?;
    for rep in [
        VerificationReport::from_samples("2E/pi>1-r^2/4-r^4/8", None, Side::Lower, grid.to_string(), &e_samples),
        VerificationReport::from_samples(
            "Phi_d4>1-r^2/4 on (0,33/50)",
            None,
            Side::Lower,
            grid.to_string(),
            &phi_samples,
        ),
    ] {
        out.push(SuiteResult::from_report("lemmas", &rep, BTreeMap::new(), 0.0));
    }
    Ok(out)
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Increasing => "increasing",
        Direction::Decreasing => "decreasing",
    }
}

/// Moduli grid for the `AG(1, r)` forms of the prior bounds.
pub fn prior_modulus_grid() -> GridSpec {
    GridSpec::new(GridKind::ModulusUniform, 1000, 0.001, 0.999).expect("valid grid")
}

fn run_prior(grid: &GridSpec, opts: &SuiteOptions) -> Result<Vec<SuiteResult>> {
    let start = Instant::now();
    let pairs = grid.pairs_seeded(opts.seed)?;
    let mgrid = prior_modulus_grid();
    let reports = prior_bounds_suite(&pairs, &opts.grid_label(grid), &mgrid.values(), &mgrid.to_string());
    let ms = elapsed_ms(start);
    Ok(reports
        .iter()
        .map(|r| SuiteResult::from_report("prior", r, BTreeMap::new(), ms))
        .collect())
}

pub const GAUSS_TOL: f64 = 1e-13;
pub const ORACLE_AGREEMENT_TOL: f64 = 1e-10;
pub const LANDEN_TOL: f64 = 1e-12;
pub const DERIVATIVE_REL_TOL: f64 = 1e-6;
pub const DERIVATIVE_STEP: f64 = 1e-5;

/// Gauss, oracle agreement, Landen, Legendre and derivative checks.
pub fn run_identities() -> Vec<SuiteResult> {
    let start = Instant::now();
    let rs: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
    let g = "modulus-uniform:99:0.01:0.99".to_string();
    let m = |r: f64| Modulus::new(r).expect("r in (0, 1)");
    let mut reports = vec![
        VerificationReport::evaluate("AG(1,r)K(r')=pi/2", None, Side::Lower, g.clone(), &rs, |&r| {
            let ag = agm_value(&PositivePair::new(1.0, r).expect("positive"));
            let k = crate::elliptic::ell_k(&m((1.0 - r * r).sqrt()));
            Sample::modulus_only(r, GAUSS_TOL - (ag * k - FRAC_PI_2).abs())
        }),
        VerificationReport::evaluate("K=quadK", None, Side::Lower, g.clone(), &rs, |&r| {
            let (k, _) = ell_ke(&m(r));
            let q = quad_k(&m(r)).map(|q| (k - q).abs()).unwrap_or(f64::INFINITY);
            Sample::modulus_only(r, ORACLE_AGREEMENT_TOL - q)
        }),
        VerificationReport::evaluate("E=quadE", None, Side::Lower, g.clone(), &rs, |&r| {
            let e = ell_e(&m(r));
            let q = quad_e(&m(r)).map(|q| (e - q).abs()).unwrap_or(f64::INFINITY);
            Sample::modulus_only(r, ORACLE_AGREEMENT_TOL - q)
        }),
        VerificationReport::evaluate("landenK", None, Side::Lower, g.clone(), &rs, |&r| {
            let mm = m(r);
            let lhs = landen_k(&mm).unwrap_or(f64::NAN);
            Sample::modulus_only(r, LANDEN_TOL - (lhs - (1.0 + r) * ell_ke(&mm).0).abs())
        }),
        VerificationReport::evaluate("landenE", None, Side::Lower, g.clone(), &rs, |&r| {
            let mm = m(r);
            let (k, e) = ell_ke(&mm);
            let lhs = landen_e(&mm).unwrap_or(f64::NAN);
            let rhs = (2.0 * e - (1.0 - r * r) * k) / (1.0 + r);
            Sample::modulus_only(r, LANDEN_TOL - (lhs - rhs).abs())
        }),
        VerificationReport::evaluate("legendre", None, Side::Lower, g.clone(), &rs, |&r| {
            let (k, e) = ell_ke(&m(r));
            let (kp, ep) = ell_ke(&m((1.0 - r * r).sqrt()));
            Sample::modulus_only(r, GAUSS_TOL * 10.0 - (e * kp + ep * k - k * kp - FRAC_PI_2).abs())
        }),
    ];

    let nine: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let h = DERIVATIVE_STEP;
    let central = |f: &dyn Fn(f64) -> f64, r: f64| (f(r + h) - f(r - h)) / (2.0 * h);
    let k_of = |r: f64| ell_ke(&m(r)).0;
    let e_of = |r: f64| ell_ke(&m(r)).1;
    let emk = |r: f64| e_minus_rp2_k(&m(r));
    let kme = |r: f64| k_minus_e(&m(r));
    let rel = |exact: f64, approx: f64| (approx - exact).abs() / exact.abs();
    let g9 = "modulus-uniform:9:0.1:0.9".to_string();
    let checks: [(&str, &dyn Fn(f64) -> f64, &dyn Fn(f64) -> f64); 4] = [
        ("dK/dr", &k_of, &|r| d_k(&m(r)).expect("r > 0")),
        ("dE/dr", &e_of, &|r| d_e(&m(r)).expect("r > 0")),
        ("d(E-r'^2K)/dr", &emk, &|r| d_e_minus_rp2_k(&m(r))),
        ("d(K-E)/dr", &kme, &|r| d_k_minus_e(&m(r))),
    ];
    for (label, f, df) in checks {
        let samples: Vec<Sample> = nine
            .iter()
            .map(|&r| Sample::modulus_only(r, DERIVATIVE_REL_TOL - rel(df(r), central(f, r))))
            .collect();
        reports.push(VerificationReport::from_samples(label, None, Side::Lower, g9.clone(), &samples));
    }
    let ms = elapsed_ms(start);
    reports
        .iter()
        .map(|r| SuiteResult::from_report("identities", r, BTreeMap::new(), ms))
        .collect()
}
