//! Number formatting for reports and CSV output.

/// Significant digits in all printed numbers.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] and prints the shortest decimal that
/// parses back to the rounded value. Very small or large magnitudes use
/// exponent notation. Output never depends on locale.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses");
    let a = rounded.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Formats a matrix one row per line, entries separated by spaces.
pub fn matrix(rows: &[Vec<f64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|&v| num(v)).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(num(0.194), "0.194");
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(-14.443939226), "-14.443939226");
        assert_eq!(num(2.0 / 3.0 * 1e-7), "6.66666666667e-8");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(f64::INFINITY), "inf");
    }

    #[test]
    fn reparses_to_printed_precision() {
        for x in [0.123456789012345, 9.87654321e-3, 1234.5678901234] {
            let back: f64 = num(x).parse().unwrap();
            assert!((back - x).abs() <= 1e-11 * x.abs());
        }
    }
}
