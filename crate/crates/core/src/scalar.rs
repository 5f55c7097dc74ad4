//! Exact rational scalars.
//!
//! Every measure, level, endpoint, and functional value in this crate is a
//! `Scalar`: an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. No operation anywhere in the crate rounds; decimal
//! output exists only as a clearly marked non-authoritative shadow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. `BigRational` already maintains the canonical
/// form we need: reduced fraction, denominator > 0.
pub type Scalar = BigRational;

/// Shorthand constructor from an integer pair. Panics on zero denominator,
/// so only use with literal arguments.
pub fn rat(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand constructor from an integer.
pub fn int(value: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(value))
}

/// Parses the rational grammar `Q := integer | integer "/" positive-integer`.
///
/// Unlike `BigRational::from_str`, a zero or negative denominator is a parse
/// error rather than a panic.
pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let (numer_str, denom_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let numer: BigInt = numer_str
        .parse()
        .map_err(|_| Error::Parse(format!("invalid integer `{numer_str}` in `{s}`")))?;
    let denom: BigInt = match denom_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid denominator `{d}` in `{s}`")))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() || denom.is_negative() {
        return Err(Error::Parse(format!(
            "denominator must be a positive integer in `{s}`"
        )));
    }
    Ok(BigRational::new(numer, denom))
}

/// Canonical printer for the same grammar: `p/q`, or just `p` when q = 1.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Non-authoritative decimal shadow, rounded to 12 significant digits.
pub fn approx(x: &Scalar) -> f64 {
    let raw = x.to_f64().unwrap_or(f64::NAN);
    round_sig12(raw)
}

fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exponent = x.abs().log10().floor();
    let shift = 10f64.powf(11.0 - exponent);
    (x * shift).round() / shift
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_scalar("5").unwrap(), int(5));
        assert_eq!(parse_scalar("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_scalar(" 3/2 ").unwrap(), rat(3, 2));
        assert_eq!(parse_scalar("6/4").unwrap(), rat(3, 2));
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(parse_scalar("").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1/-2").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1.5").is_err());
    }

    #[test]
    fn printer_round_trips() {
        for s in ["0", "7", "-7", "3/2", "-22/7"] {
            let q = parse_scalar(s).unwrap();
            assert_eq!(fmt_scalar(&q), s);
            assert_eq!(parse_scalar(&fmt_scalar(&q)).unwrap(), q);
        }
    }

    #[test]
    fn shadow_is_close() {
        let q = rat(7, 16);
        assert!((approx(&q) - 0.4375).abs() < 1e-12);
    }
}
