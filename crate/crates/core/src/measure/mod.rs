//! Weights, quadrature and the measure of P obtained from that of Q through
//! the map x -> T^_{2m}(x).

pub mod gauss;
pub mod quad;
pub mod special;
pub mod stieltjes;
pub mod weight;

use crate::chebyshev::{cheb_eval, cos_pi_ratio, t_hat, u_hat, zeros_t, zeros_u, ChebKind};
use crate::error::{Error, Result};
use crate::mapping::delta;
use crate::real::{rational_to_real, real, real_int, Real};
use crate::recurrence::TSequence;
use crate::scalar::Rational;

pub use weight::{Singularity, WeightFn};

#[derive(Debug, Clone)]
pub struct AcPart<R> {
    pub weight: WeightFn<R>,
    /// Disjoint open intervals, ascending.
    pub intervals: Vec<(R, R)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMass<R> {
    pub location: R,
    pub mass: R,
}

/// Absolutely continuous part plus finitely many point masses.
#[derive(Debug, Clone)]
pub struct Measure<R> {
    pub ac: Option<AcPart<R>>,
    pub point_masses: Vec<PointMass<R>>,
}

impl<R: Real> Measure<R> {
    /// A weight on its whole support.
    pub fn from_weight(w: WeightFn<R>) -> Self {
        let interval = w.support();
        Measure {
            ac: Some(AcPart {
                weight: w,
                intervals: vec![interval],
            }),
            point_masses: Vec::new(),
        }
    }

    /// Closed support: the closure of the intervals plus every positive mass.
    pub fn support(&self) -> Vec<(R, R)> {
        let mut parts: Vec<(R, R)> = self
            .ac
            .as_ref()
            .map(|ac| ac.intervals.clone())
            .unwrap_or_default();
        parts.extend(
            self.point_masses
                .iter()
                .filter(|pm| pm.mass > R::zero())
                .map(|pm| (pm.location, pm.location)),
        );
        closure_of_union(parts)
    }
}

/// Merges intervals whose closures touch or overlap.
pub fn closure_of_union<R: Real>(mut parts: Vec<(R, R)>) -> Vec<(R, R)> {
    parts.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite endpoints"));
    let mut out: Vec<(R, R)> = Vec::with_capacity(parts.len());
    for (lo, hi) in parts {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// 2^{1-2m}, the extreme values of T^_{2m} on [-1, 1].
fn edge<R: Real>(m: usize) -> R {
    real::<R>(2.0).powi(1 - 2 * m as i32)
}

/// The point on the l-th monotone branch of T^_{2m} (l = 0..2m-1, between
/// cos(lπ/2m) and cos((l+1)π/2m)) where T^_{2m} takes the value `y`.
fn branch_point<R: Real>(l: usize, y: R, m: usize) -> R {
    let k = 2 * m;
    let scaled = y * real::<R>(2.0).powi(k as i32 - 1);
    let one = R::one();
    let even = l.is_multiple_of(2);
    if scaled == one {
        let idx = if even { l } else { l + 1 };
        return cos_pi_ratio(idx as i64, k as i64);
    }
    if scaled == -one {
        let idx = if even { l + 1 } else { l };
        return cos_pi_ratio(idx as i64, k as i64);
    }
    let phi = scaled.acos();
    let kk = real_int::<R>(k as i64);
    let theta = if even {
        (real_int::<R>(l as i64) * R::pi() + phi) / kk
    } else {
        (real_int::<R>(l as i64 + 1) * R::pi() - phi) / kk
    };
    refine(theta.cos(), scaled, k)
}

/// Bisection on T_k(x) = target in a few-ulp bracket around `x`; keeps `x`
/// when the bracket does not straddle the root.
fn refine<R: Real>(x: R, target: R, k: usize) -> R {
    let delta = real::<R>(64.0) * R::epsilon() * x.abs().max(R::one());
    let f = |v: R| cheb_eval(ChebKind::T, k as i64, v) - target;
    let (mut lo, mut hi) = (x - delta, x + delta);
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo * fhi < R::zero()) {
        return x;
    }
    for _ in 0..200 {
        let mid = (lo + hi) / real(2.0);
        if !(mid > lo && mid < hi) {
            break;
        }
        let fm = f(mid);
        if fm == R::zero() {
            return mid;
        }
        if (fm < R::zero()) == (flo < R::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) / real(2.0)
}

/// All 2m points where T^_{2m}(x) = y, ascending.
pub fn preimages<R: Real>(y: R, m: usize) -> Vec<R> {
    let mut pts: Vec<R> = (0..2 * m).map(|l| branch_point(l, y, m)).collect();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite points"));
    pts
}

/// E = {x : ξ < T^_{2m}(x) < η} as 2m open intervals, one per monotone
/// branch, ascending. Intervals from neighbouring branches may share an
/// endpoint when ξ or η is an extreme value.
pub fn preimage_e<R: Real>(xi: R, eta: R, m: usize) -> Result<Vec<(R, R)>> {
    check_window(xi, eta, m)?;
    let mut out: Vec<(R, R)> = (0..2 * m)
        .map(|l| {
            let a = branch_point(l, xi, m);
            let b = branch_point(l, eta, m);
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite endpoints"));
    Ok(out)
}

fn check_window<R: Real>(xi: R, eta: R, m: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let e = edge::<R>(m);
    if !(-e <= xi && xi < eta && eta <= e) {
        return Err(Error::InvalidArgument(format!(
            "window ({xi}, {eta}) must satisfy -2^(1-2m) <= ξ < η <= 2^(1-2m)"
        )));
    }
    Ok(())
}

/// μ_Q(R) = ∫ w_Q over the support of `wq`.
pub fn total_mass<R: Real>(wq: &WeightFn<R>, tol: R) -> Result<R> {
    let (a, b) = wq.support();
    quad::quad(wq, &|_| R::one(), a, b, tol)
}

/// C = ∫_ξ^η w_Q(x) / (x + 2^{1-2m}) dx over the support [ξ, η] of `wq`.
pub fn compute_c<R: Real>(wq: &WeightFn<R>, m: usize, tol: R) -> Result<R> {
    let (xi, eta) = wq.support();
    check_window(xi, eta, m)?;
    let shifted = wq.with_factor(-edge::<R>(m), -R::one()).map_err(|_| {
        Error::Divergent(format!(
            "C = ∞ because w_Q does not vanish fast enough at {}; masses are undefined",
            -edge::<R>(m)
        ))
    })?;
    quad::quad(&shifted, &|_| R::one(), xi, eta, tol)
}

/// Values of M in [-MASS_CLAMP, 0) are treated as zero.
pub const MASS_CLAMP: f64 = 1e-10;

/// M = (1/m) (2^{2m-3} μ_Q(R) / t_m - C).
pub fn compute_mass_m<R: Real>(mu_q_total: R, c: R, t_m: &Rational, m: usize) -> Result<R> {
    let tm = rational_to_real::<R>(t_m);
    if !(tm > R::zero()) {
        return Err(Error::InvalidArgument(format!(
            "t_m = {t_m} must be positive"
        )));
    }
    let lead = real::<R>(2.0).powi(2 * m as i32 - 3) * mu_q_total / tm;
    let mass = (lead - c) / real_int(m as i64);
    if mass >= R::zero() {
        Ok(mass)
    } else if mass >= -real::<R>(MASS_CLAMP) {
        Ok(R::zero())
    } else {
        Err(Error::NegativeMass {
            value: mass.to_f64(),
        })
    }
}

/// μ_P together with the numbers that determine it.
#[derive(Debug, Clone)]
pub struct MappedMeasure<R> {
    pub measure: Measure<R>,
    pub mu_q_total: R,
    pub c: R,
    pub mass: R,
}

/// Builds μ_P = w_P χ_E dx + M Σ δ(x - z_i) from w_Q on [ξ, η], where
/// w_P(x) = |U_{m-1}(x) / T_m(x)| w_Q(T^_{2m}(x)).
///
/// The factors of w_Q are carried over to x through
/// T^_{2m} + 2^{1-2m} = Π (x - z_i)^2,
/// 2^{1-2m} - T^_{2m} = (1 - x^2) Π (x - c_l)^2 (c_l the zeros of U_{m-1})
/// and T^_{2m} - c = Π over the 2m preimages of c.
pub fn build_mu_p<R: Real>(wq: &WeightFn<R>, ts: &TSequence, tol: R) -> Result<MappedMeasure<R>> {
    let m = ts.m();
    let (xi, eta) = wq.support();
    check_window(xi, eta, m)?;
    let mu_q_total = total_mass(wq, tol)?;
    let c = compute_c(wq, m, tol)?;
    let mass = compute_mass_m(mu_q_total, c, &ts.t(m), m)?;

    let lo = -edge::<R>(m);
    let hi = edge::<R>(m);
    let z: Vec<R> = zeros_t(m as i64)?;
    let u: Vec<R> = zeros_u(m as i64 - 1);
    let k = 2 * m as i64;
    let plus_one = cos_pi_ratio::<R>(0, k);
    let minus_one = cos_pi_ratio::<R>(k, k);
    let two = real::<R>(2.0);

    let mut factors: Vec<Singularity<R>> = Vec::new();
    factors.extend(z.iter().map(|&location| Singularity {
        location,
        exponent: -R::one(),
    }));
    factors.extend(u.iter().map(|&location| Singularity {
        location,
        exponent: R::one(),
    }));
    let mut outside: Vec<Singularity<R>> = Vec::new();
    for s in wq.singularities() {
        let e = s.exponent;
        if s.location == lo {
            factors.extend(z.iter().map(|&location| Singularity {
                location,
                exponent: two * e,
            }));
        } else if s.location == hi {
            factors.push(Singularity {
                location: plus_one,
                exponent: e,
            });
            factors.push(Singularity {
                location: minus_one,
                exponent: e,
            });
            factors.extend(u.iter().map(|&location| Singularity {
                location,
                exponent: two * e,
            }));
        } else if s.location > lo && s.location < hi {
            factors.extend(
                preimages(s.location, m)
                    .into_iter()
                    .map(|location| Singularity {
                        location,
                        exponent: e,
                    }),
            );
        } else {
            outside.push(*s);
        }
    }

    let intervals = preimage_e(xi, eta, m)?;
    let closed = closure_of_union(intervals.clone());
    let wp = {
        let wq = wq.clone();
        WeightFn::new_unchecked(
            move |x: R| {
                let y = cheb_eval(ChebKind::T_MONIC, 2 * m as i64, x);
                let mut v = wq.regular(y);
                for s in &outside {
                    v = v * crate::real::pow_real((y - s.location).abs(), s.exponent);
                }
                v
            },
            factors,
            (minus_one, plus_one),
        )
    };
    for s in wp.singularities() {
        let touches = closed
            .iter()
            .any(|&(a, b)| s.location >= a && s.location <= b);
        if touches && s.exponent <= -R::one() {
            return Err(Error::Divergent(format!(
                "w_P has exponent {} at {}",
                s.exponent, s.location
            )));
        }
    }

    let point_masses = z
        .iter()
        .map(|&location| PointMass { location, mass })
        .collect();
    Ok(MappedMeasure {
        measure: Measure {
            ac: Some(AcPart {
                weight: wp,
                intervals,
            }),
            point_masses,
        },
        mu_q_total,
        c,
        mass,
    })
}

/// The per-zero masses
/// M_i = [μ_Q(R) Δ_0(2, m-1; z_i) / Π_{j=1..m} t_j - U^_{m-1}(z_i) C] / T^_m'(z_i),
/// listed for z_1 > ... > z_m.
pub fn point_masses_at_zeros<R: Real>(ts: &TSequence, mu_q_total: R, c: R) -> Result<Vec<R>> {
    let m = ts.m();
    let d = delta(ts, 0, 2, m as i64 - 1)?;
    let prod = (1..=m).fold(Rational::from_integer(1.into()), |acc, j| acc * ts.t(j));
    let prod = rational_to_real::<R>(&prod);
    let eta = u_hat(m as i64 - 1);
    let theta_prime = t_hat(m as i64).derivative();
    let z: Vec<R> = zeros_t(m as i64)?;
    Ok(z.into_iter()
        .map(|zi| {
            let num = mu_q_total * d.eval_real(zi) / prod - eta.eval_real(zi) * c;
            num / theta_prime.eval_real(zi)
        })
        .collect())
}
