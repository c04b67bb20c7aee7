//! Exact rational numbers and their textual / JSON encodings.
//!
//! All payoffs, probabilities and discount factors in this crate are
//! arbitrary-precision rationals. Values are always kept in lowest terms with
//! a positive denominator (guaranteed by [`num_rational::Ratio::new`]).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from machine integers.
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `p/q` or a bare integer `p`. Decimal notation is rejected so that
/// values stay exact from the command line onwards.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: input.to_string(),
        reason,
    };
    let trimmed = input.trim();
    if trimmed.contains('.') || trimmed.contains(',') {
        return Err(err("decimals are not accepted, write p/q"));
    }
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("numerator is not an integer"))?;
    let den: BigInt = den.parse().map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("denominator is zero"));
    }
    Ok(Rational::new(num, den))
}

/// `p/q` form, or just `p` for integers.
pub fn format_exact(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering with six significant digits.
pub fn format_decimal(value: &Rational) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let approx = to_f64(value);
    let magnitude = approx.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{approx:.decimals$}")
}

/// Exact form followed by the decimal rendering, e.g. `1/3 (≈ 0.333333)`.
pub fn format_both(value: &Rational) -> String {
    if value.is_integer() {
        format_exact(value)
    } else {
        format!("{} (≈ {})", format_exact(value), format_decimal(value))
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_positive() {
            f64::INFINITY
        } else {
            f64::NEG_INFINITY
        }
    })
}

pub fn in_unit_interval(value: &Rational) -> bool {
    !value.is_negative() && *value <= Rational::one()
}

/// JSON wire form of a rational: a `[numerator, denominator]` pair.
///
/// Components are emitted as JSON integers when they fit in 64 bits and as
/// decimal strings otherwise; both forms are accepted on input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPair(pub Rational);

impl From<Rational> for RationalPair {
    fn from(value: Rational) -> Self {
        RationalPair(value)
    }
}

impl From<RationalPair> for Rational {
    fn from(value: RationalPair) -> Self {
        value.0
    }
}

fn serialize_bigint<S: SerializeTuple>(seq: &mut S, value: &BigInt) -> Result<(), S::Error> {
    match value.to_i64() {
        Some(small) => seq.serialize_element(&small),
        None => seq.serialize_element(&value.to_string()),
    }
}

impl Serialize for RationalPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_tuple(2)?;
        serialize_bigint(&mut seq, self.0.numer())?;
        serialize_bigint(&mut seq, self.0.denom())?;
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntegerRepr {
    Small(i64),
    Text(String),
}

impl IntegerRepr {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntegerRepr::Small(v) => Ok(BigInt::from(v)),
            IntegerRepr::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| E::custom(format!("`{s}` is not an integer"))),
        }
    }
}

impl<'de> Deserialize<'de> for RationalPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PairVisitor;

        impl<'de> Visitor<'de> for PairVisitor {
            type Value = RationalPair;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a [numerator, denominator] pair")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let num: IntegerRepr = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let den: IntegerRepr = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                let num = num.into_bigint()?;
                let den = den.into_bigint()?;
                if !den.is_positive() {
                    return Err(de::Error::custom("denominator must be positive"));
                }
                Ok(RationalPair(Rational::new(num, den)))
            }
        }

        deserializer.deserialize_seq(PairVisitor)
    }
}

/// `#[serde(with = "pair")]` adapter for plain [`Rational`] fields.
pub mod pair {
    use super::{Rational, RationalPair};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        RationalPair(value.clone()).serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        RationalPair::deserialize(deserializer).map(|p| p.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("9/10").unwrap(), rat(9, 10));
        assert_eq!(parse_rational("-20000").unwrap(), int(-20000));
        assert_eq!(parse_rational(" 4/8 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("3/-4").unwrap(), rat(-3, 4));
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("0,33").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn decimal_rendering_has_six_significant_digits() {
        assert_eq!(format_decimal(&rat(1, 3)), "0.333333");
        assert_eq!(format_decimal(&rat(2, 7)), "0.285714");
        assert_eq!(format_decimal(&int(-10000)), "-10000.0");
        assert_eq!(format_decimal(&rat(1, 300)), "0.00333333");
        assert_eq!(format_both(&rat(1, 2)), "1/2 (≈ 0.500000)");
    }

    #[test]
    fn pair_encoding_round_trips_large_values() {
        let big = pow(&rat(99, 100), 40);
        let json = serde_json::to_string(&RationalPair(big.clone())).unwrap();
        assert!(json.starts_with("[\""));
        let back: RationalPair = serde_json::from_str(&json).unwrap();
        assert_eq!(back.0, big);

        let small: RationalPair = serde_json::from_str("[6, -4]").unwrap_or(RationalPair(int(0)));
        assert_eq!(small.0, int(0), "negative denominators are rejected");
        let reduced: RationalPair = serde_json::from_str("[6, 4]").unwrap();
        assert_eq!(reduced.0, rat(3, 2));
        assert_eq!(serde_json::to_string(&reduced).unwrap(), "[3,2]");
    }
}
