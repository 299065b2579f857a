//! Byte-stable float formatting.

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest round-trip text of `x` rounded to 12 significant digits;
/// scientific notation outside `[1e-4, 1e15)`.
pub fn fmt_float(x: f64) -> String {
    let y = round_sig(x);
    if y.is_nan() {
        return "nan".into();
    }
    if y.is_infinite() {
        return if y > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if y == 0.0 {
        return "0".into();
    }
    let a = y.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{y}")
    } else {
        format!("{y:e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(fmt_float(-0.0), "0");
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(0.1 + 0.2), "0.3");
        assert_eq!(fmt_float(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_float(3.720075976020836e-44), "3.72007597602e-44");
        assert_eq!(fmt_float(-1234.5678901234), "-1234.56789012");
        assert_eq!(fmt_float(1e20), "1e20");
        assert_eq!(fmt_float(5e-5), "5e-5");
        assert_eq!(fmt_float(f64::NAN), "nan");
    }

    #[test]
    fn reparses_within_precision() {
        for x in [std::f64::consts::PI, 1.0 / 7.0, 6.02214076e23, -9.1093837e-31] {
            let y: f64 = fmt_float(x).parse().unwrap();
            assert!(((y - x) / x).abs() < 1e-11);
        }
    }
}
