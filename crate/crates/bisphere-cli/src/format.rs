//! Deterministic number formatting: fixed significant digits, decimal point
//! always `.`, no thousands separators, scientific notation only outside
//! the human-readable magnitude range — the usual %g behavior.

/// Format `v` with `sig` significant digits.
pub fn format_sig(v: f64, sig: usize) -> String {
    let sig = sig.clamp(1, 17);
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".to_string()
        } else if v > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    // Let the formatter do the rounding, then read the decimal exponent off
    // the scientific rendering (this also handles the 9.99 -> 10 carry).
    let sci = format!("{:.*e}", sig - 1, v);
    let exp: i32 = sci
        .split('e')
        .nth(1)
        .expect("scientific format has an exponent")
        .parse()
        .expect("exponent parses");
    if exp < -4 || exp >= sig as i32 {
        let (mantissa, _) = sci.split_once('e').unwrap();
        let mantissa = trim_decimal(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_decimal(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_decimal(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
