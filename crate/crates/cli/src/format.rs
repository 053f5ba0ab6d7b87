//! Locale-independent number formatting for CSV output.

/// Shortest decimal string that round-trips to `v` (at most 17 significant
/// digits). Plain notation for `1e-5 <= |v| < 1e16`, scientific otherwise.
/// Both signed zeros print as `0`.
pub fn format_value(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// One CSV line with `\n` terminator.
pub fn csv_line(values: &[f64]) -> String {
    let mut line = values
        .iter()
        .map(|v| format_value(*v))
        .collect::<Vec<_>>()
        .join(",");
    line.push('\n');
    line
}
