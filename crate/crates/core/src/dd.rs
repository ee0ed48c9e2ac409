//! Double-double arithmetic: an unevaluated sum hi + lo of two `f64` with
//! |lo| <= ulp(hi)/2, giving about 32 significant digits.
//!
//! Products use `f64::mul_add` for the exact error term. Division and the
//! square root take one correction step past the `f64` estimate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_traits::{Num, One, Zero};

#[derive(Clone, Copy, Default)]
pub struct DoubleDouble {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    /// Normalizes hi + lo.
    pub fn new(hi: f64, lo: f64) -> Self {
        if !hi.is_finite() {
            return DoubleDouble { hi, lo: 0.0 };
        }
        let (hi, lo) = two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    fn finish(hi: f64, lo: f64) -> Self {
        if !hi.is_finite() {
            return DoubleDouble { hi, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(hi, lo);
        DoubleDouble { hi, lo }
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return DoubleDouble::from(if self.hi == 0.0 { 0.0 } else { f64::NAN });
        }
        if !self.hi.is_finite() {
            return self;
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let (p, e) = two_prod(ax, ax);
        let diff = (self - DoubleDouble { hi: p, lo: e }).hi;
        let (hi, lo) = two_sum(ax, diff * x * 0.5);
        DoubleDouble { hi, lo }
    }

    pub fn trunc(self) -> Self {
        let h = self.hi.trunc();
        if h == self.hi {
            DoubleDouble::new(h, self.lo.trunc())
        } else {
            DoubleDouble::from(h)
        }
    }

    /// Multiplies by 2^k exactly.
    pub fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        DoubleDouble {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }
}

impl From<i64> for DoubleDouble {
    fn from(v: i64) -> Self {
        let hi = v as f64;
        let lo = (v - hi as i64) as f64;
        DoubleDouble::new(hi, lo)
    }
}

impl PartialEq for DoubleDouble {
    fn eq(&self, other: &Self) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return DoubleDouble::from(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        DoubleDouble::finish(s1, s2 + t2)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return DoubleDouble::from(p1);
        }
        DoubleDouble::finish(p1, p2 + (self.hi * b.lo + self.lo * b.hi))
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || q1 == 0.0 {
            return DoubleDouble::from(q1);
        }
        let r = self - b * DoubleDouble::from(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * DoubleDouble::from(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DoubleDouble { hi: q1, lo: q2 } + DoubleDouble::from(q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, b: Self) -> Self {
        self - (self / b).trunc() * b
    }
}

macro_rules! with_f64 {
    ($tr:ident, $f:ident, $atr:ident, $af:ident) => {
        impl $tr<f64> for DoubleDouble {
            type Output = Self;
            fn $f(self, b: f64) -> Self {
                $tr::$f(self, DoubleDouble::from(b))
            }
        }
        impl $atr for DoubleDouble {
            fn $af(&mut self, b: Self) {
                *self = $tr::$f(*self, b);
            }
        }
    };
}

with_f64!(Add, add, AddAssign, add_assign);
with_f64!(Sub, sub, SubAssign, sub_assign);
with_f64!(Mul, mul, MulAssign, mul_assign);
with_f64!(Div, div, DivAssign, div_assign);

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble::from(0.0)
    }
    fn is_zero(&self) -> bool {
        self.hi == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble::from(1.0)
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = String;

    /// Decimal strings only; digits are accumulated in double-double.
    fn from_str_radix(text: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("radix {radix} is not supported"));
        }
        let (mantissa, exponent) = match text.find(['e', 'E']) {
            Some(i) => (
                &text[..i],
                text[i + 1..].parse::<i32>().map_err(|e| e.to_string())?,
            ),
            None => (text, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let mut value = DoubleDouble::zero();
        let mut scale = exponent;
        let mut seen_point = false;
        let mut any = false;
        for ch in digits.chars() {
            match ch {
                '.' if !seen_point => seen_point = true,
                '0'..='9' => {
                    any = true;
                    value = value * 10.0 + f64::from(ch as u8 - b'0');
                    if seen_point {
                        scale -= 1;
                    }
                }
                _ => return Err(format!("invalid number {text:?}")),
            }
        }
        if !any {
            return Err(format!("invalid number {text:?}"));
        }
        let ten = DoubleDouble::from(10.0);
        let mut p = DoubleDouble::one();
        for _ in 0..scale.unsigned_abs() {
            p *= ten;
        }
        value = if scale >= 0 { value * p } else { value / p };
        Ok(if negative { -value } else { value })
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

/// Scientific notation with 32 significant digits unless a precision is
/// given.
impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.hi.is_finite() {
            return write!(f, "{}", self.hi);
        }
        if self.hi == 0.0 {
            return write!(f, "0");
        }
        let digits = f.precision().map(|p| p + 1).unwrap_or(32).clamp(1, 34);
        let mut x = self.abs();
        let mut exp10 = x.hi.log10().floor() as i32;
        let ten = DoubleDouble::from(10.0);
        let mut p = DoubleDouble::one();
        for _ in 0..exp10.unsigned_abs() {
            p *= ten;
        }
        x = if exp10 >= 0 { x / p } else { x * p };
        if x.hi >= 10.0 {
            x /= ten;
            exp10 += 1;
        } else if x.hi < 1.0 {
            x *= ten;
            exp10 -= 1;
        }
        let mut out: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = x.hi.floor().clamp(0.0, 9.0);
            out.push(d as u8);
            x = (x - DoubleDouble::from(d)) * ten;
        }
        // round on the extra digit
        if out[digits] >= 5 {
            let mut i = digits;
            loop {
                if i == 0 {
                    out.insert(0, 1);
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if out[i] == 9 {
                    out[i] = 0;
                } else {
                    out[i] += 1;
                    break;
                }
            }
        }
        out.truncate(digits);
        let sign = if self.hi < 0.0 { "-" } else { "" };
        let mut s = String::from(sign);
        s.push((b'0' + out[0]) as char);
        if digits > 1 {
            s.push('.');
            for d in &out[1..] {
                s.push((b'0' + d) as char);
            }
        }
        write!(f, "{s}e{exp10}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(a: DoubleDouble, b: DoubleDouble) -> f64 {
        ((a - b) / b).hi.abs()
    }

    #[test]
    fn division_is_double_double_accurate() {
        let third = DoubleDouble::one() / DoubleDouble::from(3.0);
        assert!(err(third * 3.0, DoubleDouble::one()) < 1e-31);
        let x = DoubleDouble::new(3.0, 1e-20);
        let q = DoubleDouble::one() / x;
        assert!(err(q * x, DoubleDouble::one()) < 1e-31);
        assert!(third.lo() != 0.0);
    }

    #[test]
    fn sqrt_two() {
        let r = DoubleDouble::from(2.0).sqrt();
        assert!(err(r * r, DoubleDouble::from(2.0)) < 1e-31);
        assert_eq!(DoubleDouble::zero().sqrt(), DoubleDouble::zero());
    }

    #[test]
    fn parse_and_print() {
        let v = DoubleDouble::from_str_radix("0.1", 10).unwrap();
        assert!(err(v * 10.0, DoubleDouble::one()) < 1e-31);
        assert_eq!(format!("{:.5}", DoubleDouble::from(-1234.5)), "-1.23450e3");
        assert_eq!(format!("{:.3}", DoubleDouble::from(0.1)), "1.000e-1");
        assert_eq!(format!("{:.2}", DoubleDouble::from(9.999)), "1.00e1");
        assert!(DoubleDouble::from_str_radix("1.2.3", 10).is_err());
    }

    #[test]
    fn ordering_and_remainder() {
        let a = DoubleDouble::new(1.0, 1e-20);
        assert!(a > DoubleDouble::one());
        let r = DoubleDouble::from(7.5) % DoubleDouble::from(2.0);
        assert_eq!(r, DoubleDouble::from(1.5));
        assert_eq!(DoubleDouble::from(1i64 << 60).hi(), 2f64.powi(60));
    }
}
