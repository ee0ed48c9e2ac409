//! Gauss–Jacobi rules (Golub–Welsch) and the composite discretization of a
//! measure built from them.

use crate::error::{Error, Result};
use crate::real::{pow_real, real, real_int, Real};
use crate::tridiag::symmetric_tridiagonal_eigen;

use super::special::beta;
use super::weight::WeightFn;
use super::Measure;

/// Recurrence coefficients of the monic Jacobi polynomials for the weight
/// (1-x)^α (1+x)^β on [-1, 1]: `a[n]` for n < count, `b[n]` for
/// 1 <= n < count, with `b[0]` holding the total mass.
pub fn jacobi_recurrence<R: Real>(alpha: R, beta_: R, count: usize) -> Result<(Vec<R>, Vec<R>)> {
    let one = R::one();
    let two = one + one;
    if !(alpha > -one && beta_ > -one) {
        return Err(Error::InvalidArgument(format!(
            "Jacobi exponents must exceed -1 (got {alpha}, {beta_})"
        )));
    }
    let ab = alpha + beta_;
    let mut a = Vec::with_capacity(count);
    let mut b = Vec::with_capacity(count);
    for n in 0..count {
        let nn = real_int::<R>(n as i64);
        let s = two * nn + ab;
        if n == 0 {
            a.push((beta_ - alpha) / (ab + two));
            b.push(pow_real(two, ab + one) * beta(alpha + one, beta_ + one));
        } else {
            a.push((beta_ * beta_ - alpha * alpha) / (s * (s + two)));
            if n == 1 {
                let num = real::<R>(4.0) * (one + alpha) * (one + beta_);
                b.push(num / ((two + ab) * (two + ab) * (real::<R>(3.0) + ab)));
            } else {
                let num = real::<R>(4.0) * nn * (nn + alpha) * (nn + beta_) * (nn + ab);
                b.push(num / (s * s * (s + one) * (s - one)));
            }
        }
    }
    Ok((a, b))
}

/// n-point Gauss rule for (1-x)^α (1+x)^β on [-1, 1].
pub fn gauss_jacobi<R: Real>(alpha: R, beta_: R, n: usize) -> Result<(Vec<R>, Vec<R>)> {
    let (a, b) = jacobi_recurrence(alpha, beta_, n)?;
    let off: Vec<R> = b[1..].iter().map(|&v| v.sqrt()).collect();
    let eig = symmetric_tridiagonal_eigen(&a, &off)?;
    let weights = eig.first_components_sq.iter().map(|&v| v * b[0]).collect();
    Ok((eig.values, weights))
}

/// Finite list of nodes and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure<R> {
    pub nodes: Vec<R>,
    pub weights: Vec<R>,
}

impl<R: Real> DiscreteMeasure<R> {
    pub fn total(&self) -> R {
        self.weights.iter().fold(R::zero(), |acc, &w| acc + w)
    }

    pub fn integrate(&self, f: impl Fn(R) -> R) -> R {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(R::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

/// Composite Gauss rule on [a, b]: the factors of `w` at a and b become the
/// Jacobi weight, the rest is sampled at the nodes.
pub fn gauss_piece<R: Real>(w: &WeightFn<R>, a: R, b: R, n: usize) -> Result<DiscreteMeasure<R>> {
    let ea = w.exponent_at(a);
    let eb = w.exponent_at(b);
    let (s, lam) = gauss_jacobi(eb, ea, n)?;
    let one = R::one();
    let two = one + one;
    let half = (b - a) / two;
    let scale = pow_real(half, ea + eb + one);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (sk, lk) in s.into_iter().zip(lam) {
        let x = if sk <= R::zero() {
            a + half * (one + sk)
        } else {
            b - half * (one - sk)
        };
        nodes.push(x);
        weights.push(lk * scale * w.eval_interior(x, a, b));
    }
    Ok(DiscreteMeasure { nodes, weights })
}

/// Discretizes a measure: each interval of the absolutely continuous part is
/// split at the weight's factor locations and covered by `n`-point Gauss
/// rules; point masses are copied exactly.
pub fn discretize<R: Real>(mu: &Measure<R>, n: usize) -> Result<DiscreteMeasure<R>> {
    let mut out = DiscreteMeasure {
        nodes: Vec::new(),
        weights: Vec::new(),
    };
    if let Some(ac) = &mu.ac {
        for &(lo, hi) in &ac.intervals {
            let mut edges = vec![lo];
            edges.extend(ac.weight.breakpoints(lo, hi));
            edges.push(hi);
            for e in edges.windows(2) {
                let piece = gauss_piece(&ac.weight, e[0], e[1], n)?;
                out.nodes.extend(piece.nodes);
                out.weights.extend(piece.weights);
            }
        }
    }
    for pm in &mu.point_masses {
        if pm.mass > R::zero() {
            out.nodes.push(pm.location);
            out.weights.push(pm.mass);
        }
    }
    Ok(out)
}
