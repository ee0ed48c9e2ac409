//! Recurrence coefficients and Gram matrices from a discretized measure.

use crate::error::{Error, Result};
use crate::real::Real;

use super::gauss::DiscreteMeasure;

/// Monic recurrence π_{n+1} = (x - r_n) π_n - s_n π_{n-1}; `s[0]` is the
/// total mass.
#[derive(Debug, Clone, PartialEq)]
pub struct Recovered<R> {
    pub r: Vec<R>,
    pub s: Vec<R>,
}

/// Discretized Stieltjes procedure, carried out on orthonormal vectors so
/// that nothing overflows. Returns `count` pairs (r_n, s_n).
pub fn stieltjes<R: Real>(dm: &DiscreteMeasure<R>, count: usize) -> Result<Recovered<R>> {
    let len = dm.nodes.len();
    if count > len {
        return Err(Error::InvalidArgument(format!(
            "{count} coefficients need at least as many nodes (have {len})"
        )));
    }
    let mut r = Vec::with_capacity(count);
    let mut s = Vec::with_capacity(count);
    let total = dm.total();
    if !(total > R::zero()) {
        return Err(Error::StieltjesBreakdown {
            index: 0,
            last_stable: 0,
        });
    }
    let norm0 = total.sqrt();
    let mut prev = vec![R::zero(); len];
    let mut cur = vec![R::one() / norm0; len];
    s.push(total);
    let mut sqrt_s_prev = R::zero();
    for n in 0..count {
        let rn = (0..len).fold(R::zero(), |acc, i| {
            acc + dm.weights[i] * dm.nodes[i] * cur[i] * cur[i]
        });
        r.push(rn);
        if n + 1 == count {
            break;
        }
        let next: Vec<R> = (0..len)
            .map(|i| (dm.nodes[i] - rn) * cur[i] - sqrt_s_prev * prev[i])
            .collect();
        let sn = (0..len).fold(R::zero(), |acc, i| acc + dm.weights[i] * next[i] * next[i]);
        if !(sn > R::zero()) || !sn.is_finite() {
            return Err(Error::StieltjesBreakdown {
                index: n + 1,
                last_stable: n,
            });
        }
        s.push(sn);
        let root = sn.sqrt();
        prev = cur;
        cur = next.into_iter().map(|v| v / root).collect();
        sqrt_s_prev = root;
    }
    Ok(Recovered { r, s })
}

/// Values of the monic polynomials P_0..P_{count-1} with
/// P_{n+1} = (x - c_n) P_n - l_n P_{n-1} at `x`.
pub fn eval_family<R: Real>(c: &[R], l: &[R], count: usize, x: R) -> Vec<R> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(R::one());
    let mut prev = R::zero();
    for n in 0..count.saturating_sub(1) {
        let coupling = if n == 0 { R::zero() } else { l[n] };
        let next = (x - c[n]) * out[n] - coupling * prev;
        prev = out[n];
        out.push(next);
    }
    out
}

/// G_ij = ∫ P_i P_j dμ for the monic family with coefficients (c, l).
pub fn gram<R: Real>(dm: &DiscreteMeasure<R>, c: &[R], l: &[R], size: usize) -> Vec<Vec<R>> {
    let mut g = vec![vec![R::zero(); size]; size];
    for (&x, &w) in dm.nodes.iter().zip(&dm.weights) {
        let v = eval_family(c, l, size, x);
        for i in 0..size {
            let wi = w * v[i];
            for j in i..size {
                g[i][j] = g[i][j] + wi * v[j];
            }
        }
    }
    for i in 0..size {
        for j in 0..i {
            g[i][j] = g[j][i];
        }
    }
    g
}

/// Largest |G_ij| / sqrt(G_ii G_jj) over i != j.
pub fn max_relative_offdiag<R: Real>(g: &[Vec<R>]) -> R {
    let mut worst = R::zero();
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i != j {
                worst = worst.max(g[i][j].abs() / (g[i][i] * g[j][j]).sqrt());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::gauss::gauss_jacobi;

    fn arcsine(n: usize) -> DiscreteMeasure<f64> {
        let (nodes, weights) = gauss_jacobi(-0.5, -0.5, n).unwrap();
        DiscreteMeasure { nodes, weights }
    }

    #[test]
    fn arcsine_coefficients() {
        let rec = stieltjes(&arcsine(60), 21).unwrap();
        assert!((rec.s[0] - std::f64::consts::PI).abs() < 1e-13);
        assert!((rec.s[1] - 0.5).abs() < 1e-13);
        for n in 0..21 {
            assert!(rec.r[n].abs() < 1e-12);
            if n >= 2 {
                assert!((rec.s[n] - 0.25).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn too_few_nodes() {
        assert!(stieltjes(&arcsine(3), 5).is_err());
        let rec = stieltjes(&arcsine(3), 3).unwrap();
        assert_eq!(rec.r.len(), 3);
    }

    #[test]
    fn gram_of_chebyshev_family() {
        let dm = arcsine(40);
        let c = vec![0.0; 10];
        let mut l = vec![0.25; 10];
        l[1] = 0.5;
        let g = gram(&dm, &c, &l, 10);
        assert!(max_relative_offdiag(&g) < 1e-14);
        assert!((g[1][1] / g[0][0] - 0.5).abs() < 1e-14);
        assert!((g[3][3] / g[0][0] - 0.5 / 16.0).abs() < 1e-14);
    }
}
