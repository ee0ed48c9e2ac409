//! The Chebyshev mapping behind the block sequence.
//!
//! With k = 2m, blocks of the recurrence are described by the tridiagonal
//! determinants Δ_n(i, j; x) built from a_n^(l) = t_{kn+l}. They give the
//! polynomials A_j, B_j and the derived recurrence (r_n, s_n) of the family
//! Q_n, and P_{2mn+m+j+1} is recovered from Q_n and Q_{n+1} composed with
//! T^_{2m}.

use num_traits::{One, Zero};

use crate::chebyshev::{t_hat, u_hat, zeros_t};
use crate::error::{Error, Result};
use crate::poly::{Degree, ExactPoly};
use crate::real::Real;
use crate::recurrence::{QRecurrence, TSequence};
use crate::report::CheckReport;
use crate::scalar::{pow2, rat, rat_int, Rational};

/// Δ_n(i, j; x) through its three-term recursion
/// Δ(i, j) = x Δ(i, j-1) - a_n^(j) Δ(i, j-2).
pub fn delta(ts: &TSequence, n: usize, i: i64, j: i64) -> Result<ExactPoly> {
    if i < 0 {
        return Err(Error::InvalidArgument(format!(
            "Δ start index {i} is negative"
        )));
    }
    if j < i - 2 {
        return Ok(ExactPoly::zero());
    }
    let mut prev = ExactPoly::one();
    if j == i - 2 {
        return Ok(prev);
    }
    let mut cur = ExactPoly::x();
    for l in i..=j {
        let a = ts.a(n, l as usize)?;
        let next = ExactPoly::x().mul(&cur).sub(&prev.scale(&a));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn check_offset(ts: &TSequence, j: usize) -> Result<()> {
    if j >= ts.k() {
        return Err(Error::InvalidArgument(format!(
            "offset j = {j} outside 0..{}",
            ts.k()
        )));
    }
    Ok(())
}

fn uh(n: i64) -> ExactPoly {
    u_hat(n)
}

/// A_j(n; x) = U^_j + (1/4 - t_{2m(n+1)}) (U^_{j-m} U^_{m-2} - U^_{j-m-1} U^_{m-1}).
pub fn poly_a(ts: &TSequence, n: usize, j: usize) -> Result<ExactPoly> {
    check_offset(ts, j)?;
    let m = ts.m() as i64;
    let j = j as i64;
    let c = rat(1, 4) - ts.t(ts.k() * (n + 1));
    let corr = uh(j - m)
        .mul(&uh(m - 2))
        .sub(&uh(j - m - 1).mul(&uh(m - 1)));
    Ok(uh(j).add(&corr.scale(&c)))
}

/// B_j(n; x) = U^_{2m-2-j} + (1/4 - t_{2m(n+1)}) (U^_{m-j-3} U^_{m-1} - U^_{m-j-2} U^_{m-2}).
pub fn poly_b(ts: &TSequence, n: usize, j: usize) -> Result<ExactPoly> {
    check_offset(ts, j)?;
    let m = ts.m() as i64;
    let j = j as i64;
    let c = rat(1, 4) - ts.t(ts.k() * (n + 1));
    let corr = uh(m - j - 3)
        .mul(&uh(m - 1))
        .sub(&uh(m - j - 2).mul(&uh(m - 2)));
    Ok(uh(2 * m - 2 - j).add(&corr.scale(&c)))
}

fn poly_mismatch(lhs: &ExactPoly, rhs: &ExactPoly) -> String {
    format!("lhs = {lhs}; rhs = {rhs}")
}

/// Δ_n(m+2, m+j) = A_j and Δ_n(m+j+3, m+k-1) = B_j for every offset, plus
/// Δ_n(m+2, m+k-1) = U^_{2m-1} = T^_m U^_{m-1} = Δ_0(1, m-1) U^_{m-1}.
pub fn delta_identity_check(ts: &TSequence, n: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("delta_identities");
    let m = ts.m() as i64;
    let k = ts.k() as i64;
    for j in 0..ts.k() {
        let a = poly_a(ts, n, j)?;
        let d = delta(ts, n, m + 2, m + j as i64)?;
        report.record(format!("A n={n} j={j}"), d == a, || poly_mismatch(&d, &a));
        let b = poly_b(ts, n, j)?;
        let d = delta(ts, n, m + j as i64 + 3, m + k - 1)?;
        report.record(format!("B n={n} j={j}"), d == b, || poly_mismatch(&d, &b));
    }
    let full = delta(ts, n, m + 2, m + k - 1)?;
    let u = u_hat(2 * m - 1);
    report.record(format!("full block n={n}"), full == u, || {
        poly_mismatch(&full, &u)
    });
    let pell = t_hat(m).mul(&u_hat(m - 1));
    report.record("pell", pell == u, || poly_mismatch(&pell, &u));
    let head = delta(ts, 0, 1, m - 1)?.mul(&u_hat(m - 1));
    report.record("head block", head == u, || poly_mismatch(&head, &u));
    Ok(report)
}

/// r_n = 2^{4-2m} (t_{2mn+m} t_{2mn+1} + t_{2m(n+1)} t_{2mn+m+1} - 1/8).
pub fn r_coefficient(ts: &TSequence, n: usize) -> Rational {
    let m = ts.m();
    let k = ts.k();
    let b = k * n;
    let inner = ts.t(b + m) * ts.t(b + 1) + ts.t(k * (n + 1)) * ts.t(b + m + 1) - rat(1, 8);
    pow2(4 - 2 * m as i64) * inner
}

/// s_n = 4^{4-2m} t_{2mn} t_{2mn+1} t_{2mn+m} t_{2m(n-1)+m+1}, n >= 1.
pub fn s_coefficient(ts: &TSequence, n: usize) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let m = ts.m();
    let k = ts.k();
    let b = k * n;
    let prod = ts.t(b) * ts.t(b + 1) * ts.t(b + m) * ts.t(k * (n - 1) + m + 1);
    pow2(2 * (4 - 2 * m as i64)) * prod
}

/// Recurrence coefficients of the mapped family Q.
pub fn derive_q(ts: &TSequence) -> QRecurrence {
    let tr = ts.clone();
    let tsq = ts.clone();
    QRecurrence::new(
        move |n| r_coefficient(&tr, n),
        move |n| s_coefficient(&tsq, n),
    )
}

/// Everything needed to rebuild P from Q.
#[derive(Debug, Clone)]
pub struct MappingBundle {
    pub ts: TSequence,
    pub qr: QRecurrence,
    /// θ_m = T^_m
    pub theta: ExactPoly,
    /// η = U^_{m-1}
    pub eta: ExactPoly,
    /// π = T^_{2m}
    pub pi: ExactPoly,
    /// r = 2^{4-2m} (1/8 - t_{m+1} t_{2m+1})
    pub r0: Rational,
}

impl MappingBundle {
    pub fn new(ts: &TSequence) -> Self {
        let m = ts.m() as i64;
        let r0 = pow2(4 - 2 * m) * (rat(1, 8) - ts.t(ts.m() + 1) * ts.t(ts.k() + 1));
        MappingBundle {
            ts: ts.clone(),
            qr: derive_q(ts),
            theta: t_hat(m),
            eta: u_hat(m - 1),
            pi: t_hat(2 * m),
            r0,
        }
    }

    pub fn m(&self) -> usize {
        self.ts.m()
    }
}

/// Coefficient of the B_j term: a_n^(m+1) a_n^(m+2) ... a_n^(m+j+1).
pub fn b_term_coefficient(ts: &TSequence, n: usize, j: usize) -> Result<Rational> {
    let m = ts.m();
    let mut c = Rational::one();
    for l in m + 1..=m + j + 1 {
        c *= ts.a(n, l)?;
    }
    Ok(c)
}

/// The alternative coefficient 4^{-j} t_{2mn+m+1}. It agrees with
/// [`b_term_coefficient`] only while the product stays inside the run of
/// 1/4 entries, i.e. for j < m - 1.
pub fn b_term_coefficient_short(ts: &TSequence, n: usize, j: usize) -> Rational {
    pow2(-2 * j as i64) * ts.t(ts.k() * n + ts.m() + 1)
}

fn assemble(
    bundle: &MappingBundle,
    q: &[ExactPoly],
    n: usize,
    j: usize,
    coefficient: Rational,
) -> Result<ExactPoly> {
    if q.len() < n + 2 {
        return Err(Error::InvalidArgument(format!(
            "need Q_0..Q_{}, got {} polynomials",
            n + 1,
            q.len()
        )));
    }
    let a = poly_a(&bundle.ts, n, j)?;
    let b = poly_b(&bundle.ts, n, j)?;
    let first = a.mul(&q[n + 1].compose(&bundle.pi));
    let second = b.mul(&q[n].compose(&bundle.pi)).scale(&coefficient);
    first.add(&second).div_exact(&bundle.eta)
}

/// P_{2mn+m+j+1} = [A_j Q_{n+1}(T^_{2m}) + c_j B_j Q_n(T^_{2m})] / U^_{m-1}
/// with c_j = a_n^(m+1) ... a_n^(m+j+1). A nonzero remainder is reported
/// as [`Error::NotDivisible`].
pub fn mapped_p(bundle: &MappingBundle, q: &[ExactPoly], n: usize, j: usize) -> Result<ExactPoly> {
    let c = b_term_coefficient(&bundle.ts, n, j)?;
    assemble(bundle, q, n, j, c)
}

/// Same assembly with the coefficient 4^{-j} t_{2mn+m+1}.
pub fn mapped_p_short(
    bundle: &MappingBundle,
    q: &[ExactPoly],
    n: usize,
    j: usize,
) -> Result<ExactPoly> {
    let c = b_term_coefficient_short(&bundle.ts, n, j);
    assemble(bundle, q, n, j, c)
}

/// π = Δ_0(1, m) η - a_0^(m+1) Δ_0(m+3, m+k-1) + r equals T^_{2m}, its
/// derivative is 2m U^_{2m-1}, it takes the value -2^{1-2m} on the zeros
/// of T_m, and r coincides with r_0.
pub fn verify_pik<R: Real>(bundle: &MappingBundle) -> Result<CheckReport> {
    let ts = &bundle.ts;
    let m = ts.m() as i64;
    let k = ts.k() as i64;
    let mut report = CheckReport::new("pi_identities");

    let pi = delta(ts, 0, 1, m)?
        .mul(&bundle.eta)
        .sub(&delta(ts, 0, m + 3, m + k - 1)?.scale(&ts.a(0, ts.m() + 1)?))
        .add(&ExactPoly::constant(bundle.r0.clone()));
    report.record("pi = T^_2m", pi == bundle.pi, || {
        poly_mismatch(&pi, &bundle.pi)
    });

    let r0 = bundle.qr.r(0);
    report.record("r = r_0", r0 == bundle.r0, || {
        format!("r = {}, r_0 = {r0}", bundle.r0)
    });

    let dpi = pi.derivative();
    let expected = u_hat(2 * m - 1).scale(&rat_int(2 * m));
    report.record("pi' = 2m U^_{2m-1}", dpi == expected, || {
        poly_mismatch(&dpi, &expected)
    });
    let factored = bundle.theta.mul(&bundle.eta).scale(&rat_int(2 * m));
    report.record("pi' = 2m theta eta", dpi == factored, || {
        poly_mismatch(&dpi, &factored)
    });

    let target = -crate::real::rational_to_real::<R>(&pow2(1 - 2 * m));
    let tol = crate::real::real::<R>(1e-12);
    for (i, z) in zeros_t::<R>(m)?.into_iter().enumerate() {
        let v = pi.eval_real(z);
        report.record(
            format!("pi(z_{})", i + 1),
            (v - target).abs() <= tol,
            || format!("pi(z) = {v}, expected {target}"),
        );
    }
    Ok(report)
}

/// The combination
/// a_n^(m+1) Δ_n(m+3, m+k-1) - a_0^(m+1) Δ_0(m+3, m+k-1)
///   + a_n^(m) Δ_{n-1}(m+2, m+k-2) - a_0^(m) Δ_0(1, m-2) η
/// is constant and equals r_n - r_0.
pub fn verify_rn_constant(ts: &TSequence, n: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("r_n_constant");
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the r_n combination needs n >= 1".into(),
        ));
    }
    let m = ts.m() as i64;
    let k = ts.k() as i64;
    let mu = ts.m();
    let eta = u_hat(m - 1);
    let combo = delta(ts, n, m + 3, m + k - 1)?
        .scale(&ts.a(n, mu + 1)?)
        .sub(&delta(ts, 0, m + 3, m + k - 1)?.scale(&ts.a(0, mu + 1)?))
        .add(&delta(ts, n - 1, m + 2, m + k - 2)?.scale(&ts.a(n, mu)?))
        .sub(&delta(ts, 0, 1, m - 2)?.mul(&eta).scale(&ts.a(0, mu)?));
    let constant = matches!(combo.degree(), Degree::MinusInfinity | Degree::Finite(0));
    report.record(format!("constant n={n}"), constant, || {
        format!("r_n(x) = {combo}")
    });
    let expected = r_coefficient(ts, n) - r_coefficient(ts, 0);
    let value = combo.coeff(0);
    report.record(
        format!("value n={n}"),
        constant && value == expected,
        || format!("r_n(x) = {combo}, r_n - r_0 = {expected}"),
    );
    Ok(report)
}

/// a_n^(m) a_{n-1}^(m+1) ... a_{n-1}^(m+k-1) equals s_n.
pub fn verify_s_product(ts: &TSequence, n: usize) -> Result<CheckReport> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "the s_n product needs n >= 1".into(),
        ));
    }
    let mut report = CheckReport::new("s_n_product");
    let m = ts.m();
    let mut prod = ts.a(n, m)?;
    for l in m + 1..m + ts.k() {
        prod *= ts.a(n - 1, l)?;
    }
    let s = s_coefficient(ts, n);
    report.record(format!("n={n}"), prod == s, || {
        format!("product = {prod}, s_n = {s}")
    });
    Ok(report)
}

/// A_{2m-1} - U^_{2m-1} is divisible by U^_{m-1}, and the last offset of
/// every block reduces to P_{2mn+m} = T^_m Q_n(T^_{2m}).
pub fn verify_block_end_factorization(
    bundle: &MappingBundle,
    p: &[ExactPoly],
    q: &[ExactPoly],
    n: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("block_end_factorization");
    let ts = &bundle.ts;
    let m = ts.m() as i64;
    let a = poly_a(ts, n, ts.k() - 1)?;
    let diff = a.sub(&u_hat(2 * m - 1));
    let divisible = diff.div_exact(&bundle.eta).is_ok();
    report.record(format!("A_(2m-1) n={n}"), divisible, || {
        format!("{diff} is not divisible by {}", bundle.eta)
    });
    let idx = ts.k() * n + ts.m();
    if idx < p.len() && n < q.len() {
        let rhs = bundle.theta.mul(&q[n].compose(&bundle.pi));
        report.record(format!("P_(2mn+m) n={n}"), p[idx] == rhs, || {
            poly_mismatch(&p[idx], &rhs)
        });
    } else {
        report.fail(
            format!("P_(2mn+m) n={n}"),
            "not enough polynomials supplied",
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{generate_p, generate_q};

    /// Block sequence with t_{2mn}, t_{2mn+m} given by closures.
    fn seq(m: usize, even: fn(usize) -> Rational, mid: fn(usize) -> Rational) -> TSequence {
        TSequence::from_blocks(m, move |n| {
            let a = even(n);
            let b = mid(n);
            let first = if n == 0 {
                rat(1, 2)
            } else {
                rat(1, 2) - a.clone()
            };
            [a, first, b.clone(), rat(1, 2) - b]
        })
        .unwrap()
    }

    fn p1_m2() -> TSequence {
        // the p = 1 member of the Jacobi-type family for m = 2
        seq(
            2,
            |n| Rational::new((n as i64).into(), (4 * n as i64 + 1).into()),
            |n| Rational::new((2 * n as i64 + 2).into(), (2 * (4 * n as i64 + 3)).into()),
        )
    }

    fn chebyshev(m: usize) -> TSequence {
        seq(
            m,
            |n| if n == 0 { rat_int(0) } else { rat(1, 4) },
            |_| rat(1, 4),
        )
    }

    #[test]
    fn delta_base_cases() {
        let ts = p1_m2();
        assert!(delta(&ts, 0, 5, 2).unwrap().is_zero());
        assert_eq!(delta(&ts, 0, 4, 2).unwrap(), ExactPoly::one());
        assert_eq!(delta(&ts, 1, 4, 3).unwrap(), ExactPoly::x());
        let d = delta(&ts, 0, 2, 2).unwrap();
        assert_eq!(d, ExactPoly::new(vec![-ts.t(2), rat_int(0), rat_int(1)]));
        assert!(matches!(
            delta(&ts, 0, 0, 3),
            Err(Error::UndefinedCoefficient { .. })
        ));
    }

    #[test]
    fn delta_of_quarters_is_second_kind() {
        let ts = chebyshev(3);
        let d = delta(&ts, 2, 2, 3).unwrap();
        assert_eq!(d, u_hat(3));
    }

    #[test]
    fn a_and_b_examples() {
        let ts = p1_m2();
        assert_eq!(ts.t(4), rat(1, 5));
        assert_eq!(
            poly_a(&ts, 0, 2).unwrap(),
            u_hat(2).add(&ExactPoly::constant(rat(1, 20)))
        );
        assert_eq!(poly_a(&ts, 0, 0).unwrap(), u_hat(0));
        // j = 0 picks up -U^_{m-j-2} U^_{m-2} = -1 in the correction
        assert_eq!(
            poly_b(&ts, 0, 0).unwrap(),
            u_hat(2).sub(&ExactPoly::constant(rat(1, 20)))
        );
        assert!(poly_b(&ts, 0, 3).unwrap().is_zero());
        let cheb = chebyshev(2);
        assert_eq!(poly_a(&cheb, 0, 3).unwrap(), u_hat(3));
        assert_eq!(poly_b(&cheb, 1, 2).unwrap(), ExactPoly::one());
        assert!(poly_a(&ts, 0, 4).is_err());
    }

    #[test]
    fn derived_coefficients() {
        let ts = p1_m2();
        assert_eq!(r_coefficient(&ts, 0), rat(3, 40));
        let cheb = chebyshev(2);
        assert_eq!(r_coefficient(&cheb, 3), rat_int(0));
        assert_eq!(s_coefficient(&cheb, 1), rat(1, 256));
        assert_eq!(s_coefficient(&chebyshev(3), 1), pow2(-12));
    }

    #[test]
    fn identities_hold() {
        for ts in [p1_m2(), chebyshev(3)] {
            let bundle = MappingBundle::new(&ts);
            assert!(verify_pik::<f64>(&bundle).unwrap().passed);
            for n in 0..3 {
                assert!(delta_identity_check(&ts, n).unwrap().passed);
            }
            for n in 1..3 {
                let r = verify_rn_constant(&ts, n).unwrap();
                assert!(r.passed, "{r:?}");
                assert!(verify_s_product(&ts, n).unwrap().passed);
            }
        }
    }

    #[test]
    fn mapped_representation_matches_recurrence() {
        let ts = p1_m2();
        let bundle = MappingBundle::new(&ts);
        let q = generate_q(&bundle.qr, 5).unwrap();
        let p = generate_p(&ts, 40).unwrap();
        for n in 0..3 {
            for j in 0..4 {
                let got = mapped_p(&bundle, &q, n, j).unwrap();
                assert_eq!(got, p[4 * n + 2 + j + 1], "n={n} j={j}");
            }
            assert!(
                verify_block_end_factorization(&bundle, &p, &q, n)
                    .unwrap()
                    .passed
            );
        }
        let last = mapped_p(&bundle, &q, 1, 3).unwrap();
        assert_eq!(last, bundle.theta.mul(&q[2].compose(&bundle.pi)));
        let cheb = chebyshev(2);
        let cb = MappingBundle::new(&cheb);
        let cq = generate_q(&cb.qr, 3).unwrap();
        assert_eq!(mapped_p(&cb, &cq, 0, 0).unwrap(), t_hat(3));
    }

    #[test]
    fn short_coefficient_differs_past_the_quarter_run() {
        let ts = p1_m2();
        assert_eq!(
            b_term_coefficient(&ts, 0, 0).unwrap(),
            b_term_coefficient_short(&ts, 0, 0)
        );
        assert_ne!(
            b_term_coefficient(&ts, 0, 1).unwrap(),
            b_term_coefficient_short(&ts, 0, 1)
        );
        let bundle = MappingBundle::new(&ts);
        let q = generate_q(&bundle.qr, 3).unwrap();
        let p = generate_p(&ts, 10).unwrap();
        let short = mapped_p_short(&bundle, &q, 0, 1);
        assert!(short.map(|s| s != p[4]).unwrap_or(true));
    }
}
