//! Double-exponential (tanh-sinh) quadrature against a factored weight.

use crate::error::{Error, Result};
use crate::real::{real, Real};

use super::weight::WeightFn;

/// Integration budget.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Number of step halvings after the initial step h = 1/2.
    pub max_level: usize,
    /// Truncation point of the transformed variable.
    pub t_max: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            max_level: 10,
            t_max: 6.5,
        }
    }
}

/// ∫_a^b f(x) w(x) dx, split at every factor location of `w` inside (a, b).
pub fn quad<R: Real>(w: &WeightFn<R>, f: &dyn Fn(R) -> R, a: R, b: R, tol: R) -> Result<R> {
    quad_with(w, f, a, b, tol, QuadOptions::default())
}

pub fn quad_with<R: Real>(
    w: &WeightFn<R>,
    f: &dyn Fn(R) -> R,
    a: R,
    b: R,
    tol: R,
    opts: QuadOptions,
) -> Result<R> {
    let (lo, hi) = w.support();
    if a < lo || b > hi || !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "[{a}, {b}] is not a nonempty part of the support [{lo}, {hi}]"
        )));
    }
    let mut edges = vec![a];
    edges.extend(w.breakpoints(a, b));
    edges.push(b);
    let pieces = edges.len() - 1;
    let piece_tol = tol / real(pieces as f64);
    let mut total = R::zero();
    for e in edges.windows(2) {
        total = total + tanh_sinh(w, f, e[0], e[1], piece_tol, opts)?;
    }
    Ok(total)
}

struct Node<R> {
    x: R,
    dist_a: R,
    dist_b: R,
    jacobian: R,
}

fn node<R: Real>(a: R, b: R, half: R, t: R) -> Node<R> {
    let one = R::one();
    let two = one + one;
    let half_pi = R::pi() / two;
    let u = half_pi * t.sinh();
    let q = (-(two * u.abs())).exp();
    let near = two * half * q / (one + q);
    let far = two * half / (one + q);
    let (dist_a, dist_b) = if u >= R::zero() {
        (far, near)
    } else {
        (near, far)
    };
    let x = if dist_a <= dist_b {
        a + dist_a
    } else {
        b - dist_b
    };
    let jacobian = half_pi * t.cosh() * dist_a * dist_b / half;
    Node {
        x,
        dist_a,
        dist_b,
        jacobian,
    }
}

fn tanh_sinh<R: Real>(
    w: &WeightFn<R>,
    f: &dyn Fn(R) -> R,
    a: R,
    b: R,
    tol: R,
    opts: QuadOptions,
) -> Result<R> {
    let half = (b - a) / real(2.0);
    let t_max = real::<R>(opts.t_max);
    let eval = |t: R| -> (R, R) {
        let nd = node(a, b, half, t);
        if nd.dist_a == R::zero() || nd.dist_b == R::zero() || nd.jacobian == R::zero() {
            return (R::zero(), R::zero());
        }
        let v = f(nd.x) * w.eval_split(nd.x, a, nd.dist_a, b, nd.dist_b) * nd.jacobian;
        if !v.is_finite() {
            return (R::zero(), R::zero());
        }
        (v, v.abs())
    };

    let mut h = real::<R>(0.5);
    let (mut sum, mut abs_sum) = eval(R::zero());
    let mut k = 1;
    loop {
        let t = h * real_int_usize(k);
        if t > t_max {
            break;
        }
        for s in [t, -t] {
            let (v, av) = eval(s);
            sum = sum + v;
            abs_sum = abs_sum + av;
        }
        k += 1;
    }
    let mut estimate = sum * h;
    let floor = real::<R>(50.0) * R::epsilon();
    for _level in 0..opts.max_level {
        h = h / real(2.0);
        let mut k = 1;
        loop {
            let t = h * real_int_usize(k);
            if t > t_max {
                break;
            }
            for s in [t, -t] {
                let (v, av) = eval(s);
                sum = sum + v;
                abs_sum = abs_sum + av;
            }
            k += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= tol || diff <= floor * abs_sum * h {
            return Ok(estimate);
        }
    }
    Err(Error::QuadratureNotConverged {
        estimate: estimate.to_f64(),
        error: f64::NAN,
    })
}

fn real_int_usize<R: Real>(k: usize) -> R {
    crate::real::real_int(k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::weight::Singularity;

    fn unit() -> WeightFn<f64> {
        WeightFn::new(|_| 1.0, vec![], (0.0, 1.0)).unwrap()
    }

    #[test]
    fn constant_on_unit_interval() {
        let v = quad(&unit(), &|_| 1.0, 0.0, 1.0, 1e-14).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        let v = quad(&unit(), &|x| x.exp(), 0.0, 1.0, 1e-14).unwrap();
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn arcsine_weight() {
        let w = WeightFn::new(
            |_| 1.0,
            vec![
                Singularity {
                    location: -1.0,
                    exponent: -0.5,
                },
                Singularity {
                    location: 1.0,
                    exponent: -0.5,
                },
            ],
            (-1.0, 1.0),
        )
        .unwrap();
        let v = quad(&w, &|_| 1.0, -1.0, 1.0, 1e-13).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-12);
        // ∫ x^2 / sqrt(1-x^2) = π/2
        let v = quad(&w, &|x| x * x, -1.0, 1.0, 1e-13).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn strong_endpoint_and_interior_singularities() {
        // ∫_0^1 x^{-0.9} dx = 10
        let w = WeightFn::new(
            |_| 1.0,
            vec![Singularity {
                location: 0.0,
                exponent: -0.9,
            }],
            (0.0, 1.0),
        )
        .unwrap();
        let v = quad(&w, &|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 10.0).abs() < 1e-10, "{v}");
        // ∫_{-1}^1 |x|^{-1/2} dx = 4, split at the interior point
        let w = WeightFn::new(
            |_| 1.0,
            vec![Singularity {
                location: 0.0,
                exponent: -0.5,
            }],
            (-1.0, 1.0),
        )
        .unwrap();
        let v = quad(&w, &|_| 1.0, -1.0, 1.0, 1e-13).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_interval_outside_support() {
        assert!(quad(&unit(), &|_| 1.0, -0.5, 1.0, 1e-12).is_err());
    }

    #[test]
    fn double_double_precision() {
        use crate::dd::DoubleDouble;
        let w = WeightFn::new(
            |_| DoubleDouble::from(1.0),
            vec![
                Singularity {
                    location: DoubleDouble::from(-1.0),
                    exponent: DoubleDouble::from(-0.5),
                },
                Singularity {
                    location: DoubleDouble::from(1.0),
                    exponent: DoubleDouble::from(-0.5),
                },
            ],
            (DoubleDouble::from(-1.0), DoubleDouble::from(1.0)),
        )
        .unwrap();
        let tol = DoubleDouble::from(1e-28);
        let v = quad(
            &w,
            &|_| DoubleDouble::from(1.0),
            DoubleDouble::from(-1.0),
            DoubleDouble::from(1.0),
            tol,
        )
        .unwrap();
        let err = Real::abs(v - <DoubleDouble as Real>::pi()).to_f64();
        assert!(err < 1e-27, "{err:e}");
    }
}
