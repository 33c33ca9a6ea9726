//! Number formatting and CSV emission.

use crate::error::Result;
use crate::optimize::SurfaceSample;
use crate::sensitivity::{RatioPoint, SensitivityProfile};

/// Significant digits in human-readable reports.
pub const REPORT_DIGITS: usize = 10;
/// Significant digits in CSV files.
pub const CSV_DIGITS: usize = 12;

/// `%g`-style formatting with `sig` significant digits.
pub fn sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn report(x: f64) -> String {
    sig(x, REPORT_DIGITS)
}

pub fn csv(x: f64) -> String {
    sig(x, CSV_DIGITS)
}

fn value_or_nan(r: &Result<f64>) -> String {
    match r {
        Ok(v) => csv(*v),
        Err(_) => "nan".into(),
    }
}

fn table(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// `omega,rcs`; undefined points are written as `nan`.
pub fn sensitivity_csv(profile: &SensitivityProfile) -> String {
    table(
        "omega,rcs",
        profile
            .per_point
            .iter()
            .map(|p| vec![csv(p.omega), value_or_nan(&p.rcs)]),
    )
}

pub fn ratio_csv(points: &[RatioPoint]) -> String {
    table(
        "omega,ratio",
        points
            .iter()
            .map(|p| vec![csv(p.omega), value_or_nan(&p.ratio)]),
    )
}

/// Rows of `(omega, |H| hypercomplex, |H| real)`.
pub fn response_csv(rows: &[(f64, Result<f64>, Result<f64>)]) -> String {
    table(
        "omega,magnitude_hyper,magnitude_real",
        rows.iter()
            .map(|(w, h, r)| vec![csv(*w), value_or_nan(h), value_or_nan(r)]),
    )
}

/// `a3,b2,s_rcs` in lattice order; infeasible points are `inf`.
pub fn surface_csv(samples: &[SurfaceSample]) -> String {
    table(
        "a3,b2,s_rcs",
        samples
            .iter()
            .map(|s| vec![csv(s.a3), csv(s.b2), csv(s.s_rcs)]),
    )
}
