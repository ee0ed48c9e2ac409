//! Chebyshev polynomials of the first and second kind.
//!
//! Negative degrees give the zero polynomial. Monic variants are
//! `T^_n = 2^(1-n) T_n` and `U^_n = 2^(-n) U_n` for n >= 1, with
//! `T^_0 = U^_0 = 1`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::real::{real_int, Real};
use crate::scalar::{pow2, rat_int};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    FirstKind,
    SecondKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChebKind {
    pub family: Family,
    pub monic: bool,
}

impl ChebKind {
    pub const T: ChebKind = ChebKind {
        family: Family::FirstKind,
        monic: false,
    };
    pub const U: ChebKind = ChebKind {
        family: Family::SecondKind,
        monic: false,
    };
    pub const T_MONIC: ChebKind = ChebKind {
        family: Family::FirstKind,
        monic: true,
    };
    pub const U_MONIC: ChebKind = ChebKind {
        family: Family::SecondKind,
        monic: true,
    };
}

type Cache = RwLock<HashMap<(ChebKind, i64), ExactPoly>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact Chebyshev polynomial of degree `n`; zero for `n < 0`.
pub fn cheb_poly(kind: ChebKind, n: i64) -> ExactPoly {
    if n < 0 {
        return ExactPoly::zero();
    }
    if let Some(p) = cache().read().expect("cache lock").get(&(kind, n)) {
        return p.clone();
    }
    let p = if kind.monic {
        let base = cheb_poly(
            ChebKind {
                family: kind.family,
                monic: false,
            },
            n,
        );
        let shift = match (kind.family, n) {
            (_, 0) => 0,
            (Family::FirstKind, n) => 1 - n,
            (Family::SecondKind, n) => -n,
        };
        base.scale(&pow2(shift))
    } else {
        build_plain(kind.family, n)
    };
    cache()
        .write()
        .expect("cache lock")
        .insert((kind, n), p.clone());
    p
}

fn build_plain(family: Family, n: i64) -> ExactPoly {
    let two_x = ExactPoly::monomial(rat_int(2), 1);
    let first = match family {
        Family::FirstKind => ExactPoly::x(),
        Family::SecondKind => two_x.clone(),
    };
    match n {
        0 => ExactPoly::one(),
        1 => first,
        _ => {
            let kind = ChebKind {
                family,
                monic: false,
            };
            let prev = cheb_poly(kind, n - 1);
            let prev2 = cheb_poly(kind, n - 2);
            two_x.mul(&prev).sub(&prev2)
        }
    }
}

/// Monic first-kind polynomial T^_n.
pub fn t_hat(n: i64) -> ExactPoly {
    cheb_poly(ChebKind::T_MONIC, n)
}

/// Monic second-kind polynomial U^_n.
pub fn u_hat(n: i64) -> ExactPoly {
    cheb_poly(ChebKind::U_MONIC, n)
}

pub fn t_poly(n: i64) -> ExactPoly {
    cheb_poly(ChebKind::T, n)
}

pub fn u_poly(n: i64) -> ExactPoly {
    cheb_poly(ChebKind::U, n)
}

/// cos(kπ/d), evaluated as a sine so that symmetric nodes come out as exact
/// negatives of each other and the middle node is exactly zero.
pub fn cos_pi_ratio<R: Real>(k: i64, d: i64) -> R {
    let num = real_int::<R>(d - 2 * k);
    (num * R::pi() / real_int::<R>(2 * d)).sin()
}

/// Zeros z_i = cos((2i-1)π/(2m)) of T_m, i = 1..m, in descending order.
pub fn zeros_t<R: Real>(m: i64) -> Result<Vec<R>> {
    if m < 1 {
        return Err(Error::InvalidArgument(format!(
            "T_m has zeros only for m >= 1 (got m = {m})"
        )));
    }
    Ok((1..=m).map(|i| cos_pi_ratio(2 * i - 1, 2 * m)).collect())
}

/// Zeros cos(lπ/m), l = 1..m-1, of U_{m-1}, in descending order.
pub fn zeros_u<R: Real>(degree: i64) -> Vec<R> {
    let m = degree + 1;
    (1..m).map(|l| cos_pi_ratio(l, m)).collect()
}

/// Floating evaluation of a Chebyshev polynomial.
///
/// On [-1, 1] the trigonometric form is used with the angle computed from
/// the nearer endpoint; outside, the three-term recurrence (which is
/// dominant and therefore stable there).
pub fn cheb_eval<R: Real>(kind: ChebKind, n: i64, x: R) -> R {
    if n < 0 {
        return R::zero();
    }
    let one = R::one();
    let two = one + one;
    let negative = x < R::zero();
    let ax = x.abs();
    let mut value = if ax <= one {
        let theta = if ax > real_int::<R>(1) / two {
            two * ((one - ax) / two).sqrt().asin()
        } else {
            ax.acos()
        };
        match kind.family {
            Family::FirstKind => (real_int::<R>(n) * theta).cos(),
            Family::SecondKind => {
                if theta == R::zero() {
                    real_int(n + 1)
                } else {
                    (real_int::<R>(n + 1) * theta).sin() / theta.sin()
                }
            }
        }
    } else {
        let (mut prev, mut cur) = match kind.family {
            Family::FirstKind => (one, ax),
            Family::SecondKind => (one, two * ax),
        };
        if n == 0 {
            cur = one;
        }
        for _ in 1..n {
            let next = two * ax * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    };
    if negative && n % 2 == 1 {
        value = -value;
    }
    if kind.monic && n >= 1 {
        let shift = match kind.family {
            Family::FirstKind => 1 - n,
            Family::SecondKind => -n,
        };
        value = value * two.powi(shift as i32);
    }
    value
}
