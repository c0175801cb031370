//! Exact rational helpers.
//!
//! Probabilities travel as `num/den` strings everywhere outside the process,
//! including integers (`1/1`), so that readers never need to special-case them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{CsdError, Result};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Formats as `num/den`, always with an explicit denominator.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || CsdError::InvalidStrategy(format!("malformed rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && r <= &Rational::one()
}

/// Serde adapter for `Rational` fields as `num/den` strings.
pub mod serde_ratio {
    use super::{format_ratio, parse_ratio, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_ratio(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_integers_with_denominator() {
        assert_eq!(format_ratio(&integer(2)), "2/1");
        assert_eq!(format_ratio(&ratio(6, 14)), "3/7");
        assert_eq!(format_ratio(&ratio(-1, 2)), "-1/2");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_ratio("3/7").unwrap(), ratio(3, 7));
        assert_eq!(parse_ratio(" 4 ").unwrap(), integer(4));
        assert_eq!(parse_ratio("2/4").unwrap(), ratio(1, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }
}
