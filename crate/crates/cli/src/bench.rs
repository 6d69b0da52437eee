//! Single-threaded timing of the cheap `K` bounds against the AGM.

use std::f64::consts::FRAC_PI_2;
use std::hint::black_box;
use std::time::Instant;

use agmb_core::bounds::{k_envelope, k_polynomial_bounds, R_MAX};
use agmb_core::elliptic::{ell_k, Modulus};
use agmb_core::grid::{GridKind, GridSpec};
use agmb_core::Result;

use crate::output::num17;

pub fn default_grid() -> GridSpec {
    GridSpec::new(GridKind::ModulusEndpointWeighted, 4096, 0.0, R_MAX).expect("valid default grid")
}

/// Moduli below this split get their own error column.
pub const SPLIT: f64 = 0.65;
const MIN_SAMPLE_SECS: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub name: &'static str,
    pub ns_per_op: f64,
    /// Max relative error of the worse side against `K`.
    pub max_rel_err: f64,
    pub max_rel_err_below_split: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub grid: String,
    pub rows: Vec<BenchRow>,
}

fn time_ns<F: Fn(&Modulus) -> (f64, f64)>(ms: &[Modulus], f: F) -> f64 {
    let mut reps = 0usize;
    let start = Instant::now();
    loop {
        for m in ms {
            black_box(f(black_box(m)));
        }
        reps += 1;
        let secs = start.elapsed().as_secs_f64();
        if secs >= MIN_SAMPLE_SECS {
            return secs * 1e9 / (reps * ms.len()) as f64;
        }
    }
}

fn errors<F: Fn(&Modulus) -> (f64, f64)>(ms: &[Modulus], ks: &[f64], f: F) -> (f64, f64) {
    let (mut all, mut below) = (0.0f64, 0.0f64);
    for (m, &k) in ms.iter().zip(ks) {
        let (lo, hi) = f(m);
        let err = ((lo - k).abs() / k).max((hi - k).abs() / k);
        all = all.max(err);
        if m.r() < SPLIT {
            below = below.max(err);
        }
    }
    (all, below)
}

pub fn run(grid: &GridSpec) -> Result<BenchReport> {
    let ms: Vec<Modulus> = grid
        .half_range_moduli()?
        .into_iter()
        .map(Modulus::new)
        .collect::<Result<_>>()?;
    let ks: Vec<f64> = ms.iter().map(ell_k).collect();

    let agm = |m: &Modulus| (ell_k(m), 0.0);
    let envelope = |m: &Modulus| {
        let env = k_envelope(m).expect("grid lies in the half range");
        (env.k_lower(), env.k_upper())
    };
    let polynomial = |m: &Modulus| {
        let p = k_polynomial_bounds(m);
        (FRAC_PI_2 / p.c28_upper, FRAC_PI_2 / p.c28_lower)
    };

    let mut rows = vec![BenchRow {
        name: "ell_k",
        ns_per_op: time_ns(&ms, agm),
        max_rel_err: 0.0,
        max_rel_err_below_split: 0.0,
    }];
    let (e_all, e_below) = errors(&ms, &ks, envelope);
    rows.push(BenchRow {
        name: "envelope",
        ns_per_op: time_ns(&ms, envelope),
        max_rel_err: e_all,
        max_rel_err_below_split: e_below,
    });
    let (p_all, p_below) = errors(&ms, &ks, polynomial);
    rows.push(BenchRow {
        name: "polynomial",
        ns_per_op: time_ns(&ms, polynomial),
        max_rel_err: p_all,
        max_rel_err_below_split: p_below,
    });
    Ok(BenchReport {
        grid: grid.to_string(),
        rows,
    })
}

impl BenchReport {
    pub fn to_plain(&self) -> String {
        let mut s = format!("grid {}\n", self.grid);
        s.push_str(&format!(
            "{:<12} {:>10} {:>14} {:>14}\n",
            "form", "ns/op", "max rel err", format!("r<{SPLIT}")
        ));
        for r in &self.rows {
            s.push_str(&format!(
                "{:<12} {:>10.1} {:>14.3e} {:>14.3e}\n",
                r.name, r.ns_per_op, r.max_rel_err, r.max_rel_err_below_split
            ));
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("form,ns_per_op,max_rel_err,max_rel_err_below_split\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{},{},{},{}\n",
                r.name,
                num17(r.ns_per_op),
                num17(r.max_rel_err),
                num17(r.max_rel_err_below_split)
            ));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                format!(
                    "{{\"form\":\"{}\",\"ns_per_op\":{},\"max_rel_err\":{},\"max_rel_err_below_split\":{}}}",
                    r.name,
                    num17(r.ns_per_op),
                    num17(r.max_rel_err),
                    num17(r.max_rel_err_below_split)
                )
            })
            .collect();
        format!(
            "{{\"grid\":\"{}\",\"split\":{},\"rows\":[{}]}}\n",
            self.grid,
            num17(SPLIT),
            rows.join(",")
        )
    }
}
