//! Reporting-boundary rounding. Computations keep full precision; values are
//! rounded to one decimal, half away from zero, only when shown or compared
//! in reported form.

/// Values closer than this to a rounding midpoint are treated as the
/// midpoint, so sums such as `12.15 / 3` round the way their decimal form
/// does.
const MIDPOINT_SLACK: f64 = 1e-9;

/// Rounds to one decimal place, half away from zero.
pub fn round1(x: f64) -> f64 {
    let scaled = x * 10.0;
    (scaled + scaled.signum() * MIDPOINT_SLACK).round() / 10.0
}

/// One-decimal rendering used by every report.
pub fn fmt1(x: f64) -> String {
    let r = round1(x);
    // avoid "-0.0"
    format!("{:.1}", if r == 0.0 { 0.0 } else { r })
}

/// Up to four decimals with trailing zeros removed, e.g. `3.25`, `4`.
pub fn fmt_trim(x: f64) -> String {
    let s = format!("{:.4}", (x * 1e4).round() / 1e4);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
