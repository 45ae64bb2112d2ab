//! Exact rationals extended with `+∞`.
//!
//! Singularity exponents and Arnold multiplicities live in `[0, +∞]`, and the
//! degenerate conventions (`c = 0 ⇔ λ = +∞`) are part of the theory, so
//! infinity is a real variant rather than a sentinel.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number or `+∞`.
///
/// The derived ordering puts every finite value below `PlusInfinity`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    Finite(BigRational),
    PlusInfinity,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtRational::Finite(BigRational::one())
    }

    pub fn infinity() -> Self {
        ExtRational::PlusInfinity
    }

    pub fn integer(n: i64) -> Self {
        ExtRational::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den` in lowest terms. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExtRational::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        !self.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(q) if q.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtRational::Finite(q) if q.is_negative())
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRational::Finite(q) => Some(q),
            ExtRational::PlusInfinity => None,
        }
    }

    /// Reciprocal on `[0, +∞]`: `1/0 = +∞`, `1/+∞ = 0`.
    ///
    /// Negative values have no place in this value space and are rejected.
    pub fn recip(&self) -> Result<Self> {
        match self {
            ExtRational::PlusInfinity => Ok(ExtRational::zero()),
            ExtRational::Finite(q) if q.is_negative() => Err(Error::invalid(format!(
                "reciprocal of negative value {q} is outside [0, +inf]"
            ))),
            ExtRational::Finite(q) if q.is_zero() => Ok(ExtRational::PlusInfinity),
            ExtRational::Finite(q) => Ok(ExtRational::Finite(q.recip())),
        }
    }

    /// Multiplication by a nonnegative scalar, with `0 · ∞ = 0`.
    pub fn scale(&self, alpha: &BigRational) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::invalid(format!(
                "scalar {alpha} must be nonnegative"
            )));
        }
        Ok(match self {
            ExtRational::PlusInfinity if alpha.is_zero() => ExtRational::zero(),
            ExtRational::PlusInfinity => ExtRational::PlusInfinity,
            ExtRational::Finite(q) => ExtRational::Finite(q * alpha),
        })
    }

    pub fn min(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::PlusInfinity => f64::INFINITY,
            ExtRational::Finite(q) => rational_to_f64(q),
        }
    }

    /// Exact decimal rendering rounded half away from zero; `"inf"` for `+∞`.
    pub fn to_decimal_string(&self, places: u32) -> String {
        match self {
            ExtRational::PlusInfinity => "inf".to_string(),
            ExtRational::Finite(q) => rational_to_decimal(q, places),
        }
    }
}

impl std::ops::Add for ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: ExtRational) -> ExtRational {
        match (self, rhs) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::PlusInfinity,
        }
    }
}

impl<'a> std::ops::Add for &'a ExtRational {
    type Output = ExtRational;

    fn add(self, rhs: &'a ExtRational) -> ExtRational {
        self.clone() + rhs.clone()
    }
}

impl From<BigRational> for ExtRational {
    fn from(q: BigRational) -> Self {
        ExtRational::Finite(q)
    }
}

impl PartialEq<BigRational> for ExtRational {
    fn eq(&self, other: &BigRational) -> bool {
        matches!(self, ExtRational::Finite(q) if q == other)
    }
}

impl PartialOrd<BigRational> for ExtRational {
    fn partial_cmp(&self, other: &BigRational) -> Option<Ordering> {
        Some(match self {
            ExtRational::PlusInfinity => Ordering::Greater,
            ExtRational::Finite(q) => q.cmp(other),
        })
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::PlusInfinity => f.write_str("inf"),
            ExtRational::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "∞" | "+∞" => Ok(ExtRational::PlusInfinity),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `"p/q"` or `"p"` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("cannot parse {s:?} as a rational"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    // Ratio::to_f64 handles huge numerators/denominators without overflow.
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn rational_to_decimal(q: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = q.numer().abs() * &scale;
    let den = q.denom();
    let (mut quot, rem) = scaled.div_rem(den);
    if rem * 2 >= *den {
        quot += 1;
    }
    let (int_part, frac_part) = quot.div_rem(&scale);
    let sign = if q.is_negative() && !quot.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    format!(
        "{sign}{int_part}.{frac:0>width$}",
        frac = frac_part.to_string(),
        width = places as usize
    )
}

/// Serde helper rendering a `BigRational` as a `"num/den"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_rational`] for optional values.
pub mod serde_opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(
        q: &Option<BigRational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.collect_str(q),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigRational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn infinity_is_the_top_element() {
        assert!(ExtRational::PlusInfinity > ExtRational::integer(1_000_000));
        assert!(ExtRational::ratio(1, 3) < ExtRational::ratio(1, 2));
        assert_eq!(
            ExtRational::ratio(2, 3).min(ExtRational::PlusInfinity),
            ExtRational::ratio(2, 3)
        );
    }

    #[test]
    fn extended_arithmetic_conventions() {
        assert_eq!(
            ExtRational::ratio(1, 2) + ExtRational::PlusInfinity,
            ExtRational::PlusInfinity
        );
        assert_eq!(
            ExtRational::zero().recip().unwrap(),
            ExtRational::PlusInfinity
        );
        assert_eq!(
            ExtRational::PlusInfinity.recip().unwrap(),
            ExtRational::zero()
        );
        assert!(ExtRational::ratio(-1, 2).recip().is_err());
        assert_eq!(
            ExtRational::PlusInfinity.scale(&q(0, 1)).unwrap(),
            ExtRational::zero()
        );
        assert!(ExtRational::one().scale(&q(-1, 1)).is_err());
    }

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let x = ExtRational::ratio(6, -4);
        let q = x.as_finite().unwrap();
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(
            "5/6".parse::<ExtRational>().unwrap(),
            ExtRational::ratio(5, 6)
        );
        assert_eq!("10/4".parse::<ExtRational>().unwrap().to_string(), "5/2");
        assert_eq!(
            "inf".parse::<ExtRational>().unwrap(),
            ExtRational::PlusInfinity
        );
        assert_eq!(ExtRational::integer(2).to_string(), "2");
        assert!("1/0".parse::<ExtRational>().is_err());
        assert!("abc".parse::<ExtRational>().is_err());
    }

    #[test]
    fn decimal_rendering_rounds_half_up() {
        assert_eq!(rational_to_decimal(&q(2, 3), 6), "0.666667");
        assert_eq!(rational_to_decimal(&q(1, 8), 2), "0.13");
        assert_eq!(rational_to_decimal(&q(-1, 3), 3), "-0.333");
        assert_eq!(rational_to_decimal(&q(7, 1), 2), "7.00");
        assert_eq!(rational_to_decimal(&q(1, 3), 0), "0");
        assert_eq!(ExtRational::PlusInfinity.to_decimal_string(3), "inf");
    }

    #[test]
    fn serde_uses_strings() {
        let s = serde_json::to_string(&ExtRational::ratio(6, 5)).unwrap();
        assert_eq!(s, "\"6/5\"");
        let back: ExtRational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ExtRational::ratio(6, 5));
    }
}
