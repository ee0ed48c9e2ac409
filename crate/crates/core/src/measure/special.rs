//! Log-gamma and Beta functions for positive arguments.
//!
//! Both are evaluated in double-double whatever the working type, since the
//! Stirling sum cancels a few digits.

use num_traits::One;

use crate::dd::DoubleDouble;
use crate::real::{real, real_int, Real};

/// Bernoulli numbers B_2 .. B_28 as (numerator, denominator).
const BERNOULLI: [(f64, f64); 14] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
];

fn to_dd<R: Real>(x: R) -> DoubleDouble {
    let hi = x.to_f64();
    let lo = (x - R::from_f64(hi)).to_f64();
    DoubleDouble::new(hi, lo)
}

fn from_dd<R: Real>(x: DoubleDouble) -> R {
    R::from_f64(x.hi()) + R::from_f64(x.lo())
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma<R: Real>(x: R) -> R {
    from_dd(ln_gamma_dd(to_dd(x)))
}

/// Shifts the argument to at least 24, then applies the Stirling series.
fn ln_gamma_dd(x: DoubleDouble) -> DoubleDouble {
    type R = DoubleDouble;
    let threshold = real::<R>(24.0);
    let mut z = x;
    let mut shift = R::one();
    while z < threshold {
        shift *= z;
        z += R::one();
    }
    let half = real::<R>(0.5);
    let two_pi = R::pi() + R::pi();
    let mut series = (z - half) * z.ln() - z + half * two_pi.ln();
    let inv = R::one() / z;
    let inv2 = inv * inv;
    let mut power = inv;
    for (k, (num, den)) in BERNOULLI.iter().enumerate() {
        let k2 = real_int::<R>(2 * (k as i64 + 1));
        let b = real::<R>(*num) / real::<R>(*den);
        series += b / (k2 * (k2 - R::one())) * power;
        power *= inv2;
    }
    series - shift.ln()
}

/// B(a, b) = Γ(a) Γ(b) / Γ(a + b) for a, b > 0.
pub fn beta<R: Real>(a: R, b: R) -> R {
    let (a, b) = (to_dd(a), to_dd(b));
    from_dd(Real::exp(
        ln_gamma_dd(a) + ln_gamma_dd(b) - ln_gamma_dd(a + b),
    ))
}
