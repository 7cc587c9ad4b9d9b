use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Parses `"p/q"` or a bare integer `"p"` into a reduced rational.
///
/// Returns `None` for a zero denominator or anything that is not a
/// decimal-free fraction.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num = parse_int(num)?;
    let den = parse_int(den)?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn parse_int(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('+').unwrap_or(text);
    let body = digits.strip_prefix('-').unwrap_or(digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

/// Canonical `"p/q"` form; the denominator is always written, even when it is 1.
pub fn format_rational(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        let half = parse_rational("2/4").unwrap();
        assert_eq!(format_rational(&half), "1/2");
        assert_eq!(format_rational(&parse_rational("-3").unwrap()), "-3/1");
        assert_eq!(format_rational(&parse_rational(" 6/-4 ").unwrap()), "-3/2");
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        assert!(parse_rational("1.5").is_none());
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("").is_none());
        assert!(parse_rational("pi").is_none());
        assert!(parse_rational("--1").is_none());
    }
}
