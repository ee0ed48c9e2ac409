//! Scalar fields used throughout the crate.
//!
//! Exact work happens over [`Rational`] (always-normalized big rationals).
//! Numerical work is generic over [`Real`](crate::real::Real).

use std::fmt::Debug;
use std::ops::Neg;

use crate::dd::DoubleDouble;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact scalar. `BigRational` keeps numerator and denominator coprime with a
/// positive denominator after every operation.
pub type Rational = BigRational;

/// Coefficient field of a [`DensePoly`](crate::poly::DensePoly).
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialEq + Debug + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    /// Exact fields support remainder-checked division.
    const EXACT: bool;
}

impl Scalar for Rational {
    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    const EXACT: bool = true;
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
    const EXACT: bool = false;
}

impl Scalar for DoubleDouble {
    fn from_int(v: i64) -> Self {
        DoubleDouble::from(v)
    }
    const EXACT: bool = false;
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// 2^e as an exact rational (negative exponents allowed).
pub fn pow2(e: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(2));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base, (-e) as usize).recip()
    }
}

/// Serializes as `num/den`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"num/den"`, an integer, or a terminating decimal (`"2.5"`,
/// `"-0.125"`, `"1e-3"`) into an exact rational. Mixed forms such as
/// `"1/2.5"` are rejected.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse '{text}' as a rational number"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "zero denominator in '{text}'"
            )));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = if scale >= 0 {
        num_traits::pow(ten, scale as usize)
    } else {
        num_traits::pow(ten, (-scale) as usize).recip()
    };
    let value = Rational::from_integer(numer) * factor;
    Ok(if negative { -value } else { value })
}

/// True when `q` is a negative integer (-1, -2, ...).
pub fn is_negative_integer(q: &Rational) -> bool {
    q.is_integer() && q.is_negative()
}

pub fn is_positive(q: &Rational) -> bool {
    q.is_positive()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("5/2").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("2.5").unwrap(), rat(5, 2));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("1e-2").unwrap(), rat(1, 100));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/2.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rationals_stay_normalized() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&rat_int(0)), "0/1");
        assert_eq!(format_rational(&q), "-3/2");
    }
}
