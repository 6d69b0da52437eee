//! Report writers. Floating-point fields carry 17 significant digits so a
//! parsed report reproduces the in-memory doubles exactly.

use std::fmt::Write as _;

use agmb_core::bounds::Violation;
use agmb_core::suite::SuiteResult;

/// A JSON number with 17 significant digits, or `null` when not finite.
pub fn num17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn opt17(x: Option<f64>) -> String {
    x.map(num17).unwrap_or_else(|| "null".to_string())
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn violation_json(v: &Violation) -> String {
    format!(
        "{{\"a\":{},\"b\":{},\"r\":{},\"margin\":{}}}",
        opt17(v.a),
        opt17(v.b),
        num17(v.r),
        num17(v.margin)
    )
}

pub fn result_json(r: &SuiteResult) -> String {
    let params = r
        .params
        .iter()
        .map(|(k, v)| format!("{}:{}", quote(k), num17(*v)))
        .collect::<Vec<_>>()
        .join(",");
    let violations = r.violations.iter().map(violation_json).collect::<Vec<_>>().join(",");
    format!(
        "{{\"suite\":{},\"grid\":{},\"params\":{{{}}},\"min_margin\":{},\"n_points\":{},\"violations\":[{}],\"runtime_ms\":{}}}",
        quote(&r.suite),
        quote(&r.grid),
        params,
        num17(r.min_margin),
        r.n_points,
        violations,
        num17(r.runtime_ms)
    )
}

pub fn to_json(results: &[SuiteResult]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in results.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&result_json(r));
        out.push_str(if i + 1 < results.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    out
}

pub fn to_csv(results: &[SuiteResult]) -> String {
    let mut out = String::from("suite,grid,n_points,min_margin,violations,runtime_ms\n");
    for r in results {
        // suite labels may contain commas; keep the CSV unquoted
        let label = r.suite.replace(',', ";");
        writeln!(
            out,
            "{},{},{},{:.16e},{},{:.3}",
            label,
            r.grid,
            r.n_points,
            r.min_margin,
            r.violations.len(),
            r.runtime_ms
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn to_plain(results: &[SuiteResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = if r.passed() { "ok  " } else { "FAIL" };
        writeln!(
            out,
            "{status} {:<44} n={:<6} min_margin={:+.6e} violations={} ({:.1} ms)",
            r.suite,
            r.n_points,
            r.min_margin,
            r.violations.len(),
            r.runtime_ms
        )
        .expect("writing to a String cannot fail");
        for v in r.violations.iter().take(3) {
            writeln!(
                out,
                "       a={} b={} r={:.17e} margin={:+.6e}",
                v.a.map_or("-".to_string(), |a| format!("{a:.17e}")),
                v.b.map_or("-".to_string(), |b| format!("{b:.17e}")),
                v.r,
                v.margin
            )
            .expect("writing to a String cannot fail");
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{} checks, {} failed", results.len(), failed).expect("String write");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, f64::MIN_POSITIVE] {
            let s = num17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17);
        }
        assert_eq!(num17(f64::NAN), "null");
    }

    #[test]
    fn csv_has_no_quoted_fields() {
        let r = SuiteResult {
            suite: "prior/AG<sqrt(S_0.6,1 S_0.4,1)".into(),
            grid: "ratio-log:10:1.1:10".into(),
            params: BTreeMap::new(),
            min_margin: 0.5,
            n_points: 10,
            violations: vec![],
            runtime_ms: 1.0,
        };
        let csv = to_csv(&[r]);
        assert!(!csv.contains('"'));
        assert!(csv.lines().all(|l| l.split(',').count() == 6));
    }
}
