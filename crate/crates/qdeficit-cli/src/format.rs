//! CSV cell formatting: 12 significant digits, trailing zeros trimmed, with a
//! zero snap for float dust on values that are exact zeros analytically.

use qdeficit_core::CorrelationPoint;
use std::io::{self, Write};

/// Magnitudes below this print as exactly 0. Boundary rows (negativity at the
/// separability edge, deficits at full dephasing) otherwise show ~1e-16 dust
/// where the closed forms give exact zeros. Far below every tolerance in use.
pub const ZERO_SNAP: f64 = 1e-12;

pub fn snap(v: f64) -> f64 {
    if v.abs() < ZERO_SNAP {
        0.0
    } else {
        v
    }
}

/// Format with 12 significant digits, shortest faithful spelling.
pub fn fmt_sig12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{v:.11e}");
    let (mant, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("numeric exponent");
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
            .trim_end_matches('0')
            .trim_end_matches('.')
            .to_string()
    } else {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{mant}e{exp}")
    }
}

pub const CSV_HEADER: &str = "param,deficit_bits,weak_deficit_bits,negativity";

/// Write sweep rows as CSV: fixed header, one row per point, UNIX endings.
pub fn write_csv(rows: &[(f64, CorrelationPoint)], out: &mut dyn Write) -> io::Result<()> {
    let mut buf = String::with_capacity(rows.len() * 64 + 64);
    buf.push_str(CSV_HEADER);
    buf.push('\n');
    for (param, point) in rows {
        buf.push_str(&fmt_sig12(snap(*param)));
        buf.push(',');
        buf.push_str(&fmt_sig12(snap(point.deficit)));
        buf.push(',');
        buf.push_str(&fmt_sig12(snap(point.weak_deficit)));
        buf.push(',');
        buf.push_str(&fmt_sig12(snap(point.negativity)));
        buf.push('\n');
    }
    out.write_all(buf.as_bytes())
}
