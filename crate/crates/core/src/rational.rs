//! Exact rational scalars and their canonical text form.
//!
//! Every scalar in this crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in canonical form (coprime numerator/denominator,
//! denominator >= 1). The text grammar is `-?[0-9]+(/[1-9][0-9]*)?`, i.e.
//! `p` or `p/q` with a positive, zero-free-leading denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision exact rational. `num_rational::BigRational` already
/// maintains the canonical form this crate relies on.
pub type Rational = BigRational;

/// Shorthand constructor used pervasively in tests and fixtures.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {input:?} at byte {position}: {reason}")]
pub struct RationalParseError {
    pub input: String,
    pub position: usize,
    pub reason: &'static str,
}

impl RationalParseError {
    fn new(input: &str, position: usize, reason: &'static str) -> Self {
        Self {
            input: input.to_owned(),
            position,
            reason,
        }
    }
}

/// Parse the canonical grammar `-?[0-9]+(/[1-9][0-9]*)?`.
///
/// The denominator may not be zero and may not carry leading zeros; the
/// sign, when present, sits on the numerator only. The parsed value is
/// reduced to canonical form.
pub fn parse_rational(input: &str) -> Result<Rational, RationalParseError> {
    let bytes = input.as_bytes();
    let mut pos = 0;

    if bytes.get(pos) == Some(&b'-') {
        pos += 1;
    }
    let numer_start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == numer_start {
        return Err(RationalParseError::new(
            input,
            pos,
            "expected at least one digit in the numerator",
        ));
    }
    let numer: BigInt = input[..pos].parse().expect("digits parse as BigInt");

    if pos == bytes.len() {
        return Ok(Rational::from_integer(numer));
    }
    if bytes[pos] != b'/' {
        return Err(RationalParseError::new(
            input,
            pos,
            "expected end of input or '/'",
        ));
    }
    pos += 1;
    let denom_start = pos;
    match bytes.get(pos) {
        Some(b'1'..=b'9') => {}
        Some(b'0') => {
            return Err(RationalParseError::new(
                input,
                pos,
                "denominator may not be zero or carry leading zeros",
            ));
        }
        _ => {
            return Err(RationalParseError::new(
                input,
                pos,
                "expected a nonzero digit after '/'",
            ));
        }
    }
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos != bytes.len() {
        return Err(RationalParseError::new(
            input,
            pos,
            "trailing characters after denominator",
        ));
    }
    let denom: BigInt = input[denom_start..].parse().expect("digits parse as BigInt");
    Ok(Rational::new(numer, denom))
}

/// Canonical text form: `p` when the denominator is 1, otherwise `p/q`.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// True when numerator and denominator are coprime and the denominator is
/// positive. Exposed so tests can assert the canonical-form invariant on
/// computed values.
pub fn is_canonical(value: &Rational) -> bool {
    use num_integer::Integer;
    if !value.denom().is_positive() {
        return false;
    }
    value.numer().gcd(value.denom()).is_one() || (value.numer().is_zero() && value.denom().is_one())
}

/// Total bit size of numerator plus denominator, a growth observability
/// measure for product values.
pub fn bit_size(value: &Rational) -> u64 {
    value.numer().bits() + value.denom().bits()
}

/// True when the value is an integer (denominator 1).
pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("0").unwrap(), int(0));
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7/3").unwrap(), rat(-7, 3));
        // reduction to canonical form
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("007").unwrap(), int(7));
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "-", "+1", "1//2", "1/0", "1/02", "1/-2", "1/2/3", "a", "1 ", " 1", "1.5"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn error_reports_position() {
        let err = parse_rational("1//2").unwrap_err();
        assert_eq!(err.position, 2);
        let err = parse_rational("1/0").unwrap_err();
        assert_eq!(err.position, 2);
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn canonical_check() {
        assert!(is_canonical(&rat(3, 7)));
        assert!(is_canonical(&int(0)));
        assert!(is_canonical(&(rat(1, 3) + rat(2, 3))));
    }

    #[test]
    fn bit_size_grows_with_magnitude() {
        assert!(bit_size(&rat(1, 3)) < bit_size(&rat(12345678901234567, 987654321)));
    }
}
