//! Floating working types.
//!
//! [`Real`] is implemented by `f64` and by [`DoubleDouble`]. The
//! double-double elementary functions are evaluated here by argument
//! reduction and Taylor series, or by Newton steps on those.

use std::fmt::Display;

use num_traits::ToPrimitive;

use crate::dd::DoubleDouble;
use crate::scalar::{Rational, Scalar};

pub trait Real: Scalar + Copy + PartialOrd + Display {
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;
    fn epsilon() -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn asin(self) -> Self;
    fn acos(self) -> Self;
    fn floor(self) -> Self;

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn powf(self, y: Self) -> Self {
        if self == Self::zero() {
            return if y > Self::zero() {
                Self::zero()
            } else {
                Self::from_f64(f64::INFINITY)
            };
        }
        (y * self.ln()).exp()
    }

    fn sinh(self) -> Self {
        let e = self.exp();
        (e - Self::one() / e) / Self::from_f64(2.0)
    }

    fn cosh(self) -> Self {
        let e = self.exp();
        (e + Self::one() / e) / Self::from_f64(2.0)
    }

    fn hypot(self, other: Self) -> Self {
        let a = self.abs();
        let b = other.abs();
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big == Self::zero() {
            return big;
        }
        let q = small / big;
        big * (Self::one() + q * q).sqrt()
    }

    fn fract(self) -> Self {
        let a = self.abs();
        let f = a - a.floor();
        if self < Self::zero() {
            -f
        } else {
            f
        }
    }

    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }

    fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn asin(self) -> Self {
        f64::asin(self)
    }
    fn acos(self) -> Self {
        f64::acos(self)
    }
    fn floor(self) -> Self {
        f64::floor(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn powf(self, y: Self) -> Self {
        f64::powf(self, y)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn hypot(self, other: Self) -> Self {
        f64::hypot(self, other)
    }
}

fn dd(hi: f64, lo: f64) -> DoubleDouble {
    DoubleDouble::new(hi, lo)
}

fn dd_pi() -> DoubleDouble {
    dd(std::f64::consts::PI, 1.2246467991473532e-16)
}

fn dd_ln2() -> DoubleDouble {
    dd(std::f64::consts::LN_2, 2.3190468138462996e-17)
}

fn ldexp(x: DoubleDouble, k: i32) -> DoubleDouble {
    x.ldexp(k)
}

/// Taylor series of sin and cos for |r| <= pi/4.
fn sin_cos_reduced(r: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let r2 = r * r;
    let tiny = 1e-34;
    let mut s = r;
    let mut term = r;
    let mut k = 1.0;
    loop {
        term = -term * r2 / ((k + 1.0) * (k + 2.0));
        s += term;
        k += 2.0;
        if term.hi().abs() < tiny {
            break;
        }
    }
    let mut c = DoubleDouble::from(1.0);
    let mut term = DoubleDouble::from(1.0);
    let mut k = 0.0;
    loop {
        term = -term * r2 / ((k + 1.0) * (k + 2.0));
        c += term;
        k += 2.0;
        if term.hi().abs() < tiny {
            break;
        }
    }
    (s, c)
}

fn dd_sin_cos(x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let half_pi = dd_pi() / 2.0;
    let q = (x.hi() / half_pi.hi()).round();
    let r = x - half_pi * q;
    let (s, c) = sin_cos_reduced(r);
    match (q as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

fn dd_exp(x: DoubleDouble) -> DoubleDouble {
    let h = x.hi();
    if h > 709.0 {
        return DoubleDouble::from(f64::INFINITY);
    }
    if h < -745.0 {
        return DoubleDouble::from(0.0);
    }
    let k = (h / std::f64::consts::LN_2).round();
    let r = x - dd_ln2() * k;
    let mut sum = DoubleDouble::from(1.0);
    let mut term = DoubleDouble::from(1.0);
    let mut n = 1.0;
    loop {
        term = term * r / n;
        sum += term;
        n += 1.0;
        if term.hi().abs() < 1e-36 {
            break;
        }
    }
    // split 2^k so that neither factor overflows
    let k = k as i32;
    let first = k / 2;
    ldexp(ldexp(sum, first), k - first)
}

fn dd_ln(x: DoubleDouble) -> DoubleDouble {
    let h = x.hi();
    if h <= 0.0 {
        return DoubleDouble::from(if h == 0.0 {
            f64::NEG_INFINITY
        } else {
            f64::NAN
        });
    }
    let mut y = DoubleDouble::from(h.ln());
    for _ in 0..2 {
        y = y + x * dd_exp(-y) - 1.0;
    }
    y
}

/// asin by Newton iteration, accurate where cos(asin x) stays away from 0.
fn dd_asin_newton(x: DoubleDouble) -> DoubleDouble {
    let mut y = DoubleDouble::from(x.hi().asin());
    for _ in 0..2 {
        let (s, c) = dd_sin_cos(y);
        y -= (s - x) / c;
    }
    y
}

fn dd_acos(x: DoubleDouble) -> DoubleDouble {
    if x.hi() < 0.0 {
        return dd_pi() - dd_acos(-x);
    }
    // acos x = 2 asin(sqrt((1-x)/2)) and the argument stays below 0.71
    let s = ((DoubleDouble::from(1.0) - x) / 2.0).sqrt();
    dd_asin_newton(s) * 2.0
}

fn dd_asin(x: DoubleDouble) -> DoubleDouble {
    if x.hi().abs() <= 0.75 {
        dd_asin_newton(x)
    } else if x.hi() > 0.0 {
        dd_pi() / 2.0 - dd_acos(x)
    } else {
        dd_acos(-x) - dd_pi() / 2.0
    }
}

impl Real for DoubleDouble {
    fn from_f64(v: f64) -> Self {
        DoubleDouble::from(v)
    }
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn pi() -> Self {
        dd_pi()
    }
    fn epsilon() -> Self {
        DoubleDouble::from(f64::EPSILON * f64::EPSILON / 2.0)
    }
    fn abs(self) -> Self {
        DoubleDouble::abs(self)
    }
    fn sqrt(self) -> Self {
        DoubleDouble::sqrt(self)
    }
    fn exp(self) -> Self {
        dd_exp(self)
    }
    fn ln(self) -> Self {
        dd_ln(self)
    }
    fn sin(self) -> Self {
        dd_sin_cos(self).0
    }
    fn cos(self) -> Self {
        dd_sin_cos(self).1
    }
    fn asin(self) -> Self {
        dd_asin(self)
    }
    fn acos(self) -> Self {
        dd_acos(self)
    }
    fn floor(self) -> Self {
        let h = self.hi().floor();
        if h == self.hi() {
            dd(h, self.lo().floor())
        } else {
            DoubleDouble::from(h)
        }
    }
}

/// Converts an `f64` literal into the working type.
pub fn real<R: Real>(v: f64) -> R {
    R::from_f64(v)
}

/// Converts an integer into the working type.
pub fn real_int<R: Real>(v: i64) -> R {
    <R as Scalar>::from_int(v)
}

/// Rounds an exact rational to the working type. The residual of the first
/// rounding is added back, so double-double targets receive ~106 bits.
pub fn rational_to_real<R: Real>(q: &Rational) -> R {
    let hi = q.to_f64().unwrap_or(f64::NAN);
    if !hi.is_finite() {
        return real(hi);
    }
    let residual = q - Rational::from_float(hi).expect("finite");
    let lo = residual.to_f64().unwrap_or(0.0);
    real::<R>(hi) + real::<R>(lo)
}

/// Raises a nonnegative distance to a real exponent. Integer and
/// half-integer exponents avoid the general `powf`.
pub fn pow_real<R: Real>(base: R, exponent: R) -> R {
    if exponent == R::zero() {
        return R::one();
    }
    let twice = exponent + exponent;
    if twice.fract() == R::zero() && twice.abs() < real(64.0) {
        let k = twice.to_f64() as i64;
        let root = if k % 2 != 0 { base.sqrt() } else { R::one() };
        let whole = base.powi(k.div_euclid(2) as i32);
        return whole * root;
    }
    base.powf(exponent)
}
