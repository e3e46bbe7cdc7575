// SPDX-License-Identifier: Apache-2.0

//! Text output: CSV tables and gridded plot data.

use std::fmt::Write;

use dtcm_core::{EsdEvents, Pair};

use crate::commands::SweepResult;

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros
/// removed, exponent form outside `1e-4 <= |x| < 1e12`.
pub fn fmt_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_g12).unwrap_or_default()
}

/// `tau,alpha,pair,concurrence`, alpha-major, then tau, then pair.
pub fn simulate_csv(result: &SweepResult) -> String {
    let mut out = String::from("tau,alpha,pair,concurrence\n");
    for (ia, &alpha) in result.alphas.iter().enumerate() {
        let alpha_s = fmt_g12(alpha);
        for (it, &tau) in result.taus.iter().enumerate() {
            let tau_s = fmt_g12(tau);
            for (ip, pair) in result.pairs.iter().enumerate() {
                let c = result.value(ia, it, ip);
                writeln!(out, "{tau_s},{alpha_s},{pair},{}", fmt_g12(c)).unwrap();
            }
        }
    }
    out
}

pub fn events_csv(rows: &[(f64, Pair, EsdEvents)]) -> String {
    let mut out = String::from("alpha,pair,death_time,revival_time,birth_time\n");
    for (alpha, pair, e) in rows {
        writeln!(
            out,
            "{},{pair},{},{},{}",
            fmt_g12(*alpha),
            opt(e.death_time),
            opt(e.revival_time),
            opt(e.birth_time)
        )
        .unwrap();
    }
    out
}

/// One whitespace-separated block per pair: first row is the tau grid
/// (after a placeholder corner entry), each further row is an alpha followed
/// by its concurrence values. Blocks are separated by two blank lines.
pub fn plotdata(result: &SweepResult) -> String {
    let mut out = String::new();
    for (ip, pair) in result.pairs.iter().enumerate() {
        if ip > 0 {
            out.push_str("\n\n");
        }
        writeln!(out, "# pair {pair}").unwrap();
        out.push_str("nan");
        for &tau in &result.taus {
            write!(out, " {}", fmt_g12(tau)).unwrap();
        }
        out.push('\n');
        for (ia, &alpha) in result.alphas.iter().enumerate() {
            out.push_str(&fmt_g12(alpha));
            for it in 0..result.taus.len() {
                write!(out, " {}", fmt_g12(result.value(ia, it, ip))).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_matches_printf() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.5, "0.5"),
            (25.0, "25"),
            (0.01, "0.01"),
            (std::f64::consts::PI, "3.14159265359"),
            (std::f64::consts::FRAC_PI_4, "0.785398163397"),
            (1.0 / 3.0, "0.333333333333"),
            (1.5e-5, "1.5e-05"),
            (1e-10, "1e-10"),
            (0.0001, "0.0001"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (-0.25, "-0.25"),
            (0.99999999999999, "1"),
            (2.675, "2.675"),
        ];
        for (x, s) in cases {
            assert_eq!(fmt_g12(x), s, "{x}");
        }
    }
}
