/// Shortest round-trip text of `x` after rounding to 12 significant digits.
pub fn num(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    // Debug switches to exponent form for very large or small magnitudes.
    let s = format!("{rounded:?}");
    if s == "-0.0" {
        "0.0".into()
    } else {
        s
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}
