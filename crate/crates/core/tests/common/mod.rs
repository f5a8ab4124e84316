#![allow(dead_code)]

use std::io::Write;

/// Writes past the test harness capture so the line shows in every run.
pub fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Nodes `x = sinh(s)` and weights for `∫_ℝ g(x) dx` by composite Simpson in
/// `s` on `[-s_max, s_max]`. Tails that decay like `|x|^{-1-α}` turn into
/// `e^{-α|s|}`.
pub fn sinh_rule(s_max: f64, h: f64) -> (Vec<f64>, Vec<f64>) {
    let m = (2.0 * s_max / h / 2.0).ceil() as usize * 2;
    let h = 2.0 * s_max / m as f64;
    let mut xs = Vec::with_capacity(m + 1);
    let mut ws = Vec::with_capacity(m + 1);
    for k in 0..=m {
        let s = -s_max + k as f64 * h;
        let c = if k == 0 || k == m {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        xs.push(s.sinh());
        ws.push(c * h / 3.0 * s.cosh());
    }
    (xs, ws)
}

pub fn max_abs(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}
