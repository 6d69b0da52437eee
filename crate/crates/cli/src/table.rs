use agmb_core::bounds::{e_envelope, eval_bound, k_envelope, BoundFamily, TheoremId, R_MAX};
use agmb_core::composite::{ag_qc_closed_form, pair_for_modulus};
use agmb_core::elliptic::{ell_ke, Modulus};
use agmb_core::grid::{GridKind, GridSpec};
use agmb_core::{Error, Result};
use rayon::prelude::*;

use crate::output::num17;

pub const HEADER: [&str; 16] = [
    "r", "K", "K_lo", "K_hi", "E", "E_lo", "E_hi", "agqc", "t31_lo", "t31_hi", "t32_lo", "t32_hi",
    "t33_lo", "t33_hi", "t34_lo", "t34_hi",
];

pub fn default_grid() -> GridSpec {
    GridSpec::new(GridKind::ModulusEndpointWeighted, 65, 0.0, R_MAX).expect("valid default grid")
}

fn row(r: f64) -> Result<[f64; 16]> {
    let m = Modulus::new(r)?;
    let (k, e) = ell_ke(&m);
    let env = k_envelope(&m)?;
    let e_env = e_envelope(&m)?;
    let pair = pair_for_modulus(r)?;
    let mut out = [0.0; 16];
    out[..8].copy_from_slice(&[
        r,
        k,
        env.k_lower(),
        env.k_upper(),
        e,
        e_env.lower,
        e_env.upper,
        ag_qc_closed_form(&pair),
    ]);
    for (i, t) in TheoremId::ALL.iter().enumerate() {
        let (lo, hi) = t.sharp_params();
        out[8 + 2 * i] = eval_bound(&BoundFamily::new(t.shape(), lo)?, &pair);
        out[9 + 2 * i] = eval_bound(&BoundFamily::new(t.shape(), hi)?, &pair);
    }
    Ok(out)
}

/// One row per modulus of `grid`; every modulus must lie in `(0, sqrt2/2)`.
pub fn rows(grid: &GridSpec) -> Result<Vec<[f64; 16]>> {
    if !grid.is_modulus() {
        return Err(Error::InvalidGrid(format!("{grid}: the table needs a modulus grid")));
    }
    let rs = grid.half_range_moduli()?;
    rs.par_iter().map(|&r| row(r)).collect()
}

pub fn to_csv(rows: &[[f64; 16]]) -> String {
    let mut s = HEADER.join(",");
    s.push('\n');
    for row in rows {
        s.push_str(&row.iter().map(|&x| num17(x)).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

pub fn to_json(rows: &[[f64; 16]]) -> String {
    let objs: Vec<String> = rows
        .iter()
        .map(|row| {
            let fields: Vec<String> =
                HEADER.iter().zip(row).map(|(h, &x)| format!("\"{h}\":{}", num17(x))).collect();
            format!("  {{{}}}", fields.join(","))
        })
        .collect();
    format!("[\n{}\n]\n", objs.join(",\n"))
}

pub fn to_plain(rows: &[[f64; 16]]) -> String {
    let mut s: String = HEADER.iter().map(|h| format!("{h:>13}")).collect();
    s.push('\n');
    for row in rows {
        s.extend(row.iter().map(|x| format!("{x:>13.9}")));
        s.push('\n');
    }
    s
}
