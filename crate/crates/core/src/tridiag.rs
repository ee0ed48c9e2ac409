//! Symmetric tridiagonal eigenproblems (implicit QL with Wilkinson shifts).
//!
//! Only the first component of each eigenvector is tracked, which is all
//! Golub–Welsch needs for Gauss weights.

use crate::error::{Error, Result};
use crate::real::Real;

/// Eigenvalues (ascending) and squared first eigenvector components.
#[derive(Debug, Clone)]
pub struct TridiagEigen<R> {
    pub values: Vec<R>,
    pub first_components_sq: Vec<R>,
}

/// Solves the symmetric tridiagonal eigenproblem with diagonal `diag` and
/// off-diagonal `offdiag` (`offdiag[i]` couples rows i and i+1).
pub fn symmetric_tridiagonal_eigen<R: Real>(diag: &[R], offdiag: &[R]) -> Result<TridiagEigen<R>> {
    let n = diag.len();
    if n == 0 {
        return Ok(TridiagEigen {
            values: Vec::new(),
            first_components_sq: Vec::new(),
        });
    }
    if offdiag.len() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "off-diagonal length {} does not match dimension {n}",
            offdiag.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e: Vec<R> = offdiag.to_vec();
    e.push(R::zero());
    // first row of the accumulated eigenvector matrix
    let mut z = vec![R::zero(); n];
    z[0] = R::one();

    let two = R::one() + R::one();
    let max_iter = 60 * n.max(1);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut mm = l;
            while mm + 1 < n {
                let dd = d[mm].abs() + d[mm + 1].abs();
                if e[mm].abs() <= R::epsilon() * dd {
                    break;
                }
                mm += 1;
            }
            if mm == l {
                break;
            }
            iter += 1;
            if iter > max_iter {
                return Err(Error::EigenNoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(R::one());
            g = d[mm] - d[l] + e[l] / (g + if g >= R::zero() { r.abs() } else { -r.abs() });
            let mut s = R::one();
            let mut c = R::one();
            let mut p = R::zero();
            let mut i = mm;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == R::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[mm] = R::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[mm] = R::zero();
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).expect("finite eigenvalues"));
    Ok(TridiagEigen {
        values: order.iter().map(|&i| d[i]).collect(),
        first_components_sq: order.iter().map(|&i| z[i] * z[i]).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let eig = symmetric_tridiagonal_eigen(&[0.0_f64, 0.0], &[1.0]).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!((eig.first_components_sq[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_second_kind_zeros() {
        // Jacobi matrix of U^_n: zero diagonal, off-diagonal 1/2.
        let n = 12;
        let eig = symmetric_tridiagonal_eigen(&vec![0.0_f64; n], &vec![0.5; n - 1]).unwrap();
        for (k, v) in eig.values.iter().enumerate() {
            let expected = -(((k + 1) as f64) * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((v - expected).abs() < 1e-14, "{v} vs {expected}");
        }
        let total: f64 = eig.first_components_sq.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn mismatched_lengths() {
        assert!(symmetric_tridiagonal_eigen(&[1.0_f64, 2.0], &[]).is_err());
        assert!(symmetric_tridiagonal_eigen::<f64>(&[], &[])
            .unwrap()
            .values
            .is_empty());
    }
}
