//! The Jacobi example: the block sequence
//!
//! t_{2mn} = n/(4n+p),              t_{2mn+1} = (2n+p)/(2(4n+p)),
//! t_{2mn+m} = (2n+p+1)/(2(4n+p+2)), t_{2mn+m+1} = (2n+1)/(2(4n+p+2)),
//!
//! with t_1 = 1/2 when p = 0. Its Q family is a rescaled monic Jacobi family
//! with parameters (-1/2, (p+1)/2), and for p > -1 the measure of P is
//! |T_m(x)|^p / sqrt(1-x^2) dx on [-1, 1].

use num_traits::{One, Zero};

use crate::chebyshev::{t_poly, u_poly, zeros_t};
use crate::error::{Error, Result};
use crate::mapping::{derive_q, s_coefficient};
use crate::measure::special::beta;
use crate::measure::{compute_c, compute_mass_m, total_mass, Singularity, WeightFn};
use crate::poly::ExactPoly;
use crate::real::{pow_real, rational_to_real, real, Real};
use crate::recurrence::{generate_q, TSequence};
use crate::report::{CheckReport, Finding};
use crate::scalar::{format_rational, is_negative_integer, pow2, rat, rat_int, Rational};

/// Parameters (m, p) of the example. `p` must avoid the negative integers.
#[derive(Debug, Clone, PartialEq)]
pub struct ExampleConfig {
    m: usize,
    p: Rational,
}

impl ExampleConfig {
    pub fn new(m: usize, p: Rational) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "m = {m}: the construction needs m >= 2 (for m = 1 the constraints force t_2 = 0)"
            )));
        }
        if is_negative_integer(&p) {
            return Err(Error::InvalidArgument(format!(
                "p = {p} must not be a negative integer"
            )));
        }
        Ok(ExampleConfig { m, p })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// Measure-side operations need p > -1.
    pub fn require_measure(&self) -> Result<()> {
        if self.p > rat_int(-1) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "p = {} gives no positive measure; p > -1 is required",
                self.p
            )))
        }
    }

    fn p_real<R: Real>(&self) -> R {
        rational_to_real(&self.p)
    }
}

/// The four free entries (t_{2mn}, t_{2mn+1}, t_{2mn+m}, t_{2mn+m+1}).
pub fn example_block(p: &Rational, n: usize) -> [Rational; 4] {
    let n = rat_int(n as i64);
    let two = rat_int(2);
    let four_n_p = rat_int(4) * &n + p;
    let four_n_p2 = &four_n_p + &two;
    let (t0, t1) = if four_n_p.is_zero() {
        (Rational::zero(), rat(1, 2))
    } else {
        (&n / &four_n_p, (&two * &n + p) / (&two * &four_n_p))
    };
    [
        t0,
        t1,
        (&two * &n + p + Rational::one()) / (&two * &four_n_p2),
        (&two * &n + Rational::one()) / (&two * &four_n_p2),
    ]
}

pub fn example_tsequence(cfg: &ExampleConfig) -> Result<TSequence> {
    let p = cfg.p.clone();
    TSequence::from_blocks(cfg.m, move |n| example_block(&p, n))
}

/// Jacobi parameters of the weight (1-x)^α (1+x)^β.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiParams {
    pub alpha: Rational,
    pub beta: Rational,
}

impl JacobiParams {
    /// (-1/2, (p+1)/2), the parameters behind the example's Q family.
    pub fn for_example(cfg: &ExampleConfig) -> Self {
        JacobiParams {
            alpha: rat(-1, 2),
            beta: (&cfg.p + Rational::one()) / rat_int(2),
        }
    }
}

/// Exact monic Jacobi coefficients a_n (n < count) and b_n (1 <= n < count)
/// of P_{n+1} = (x - a_n) P_n - b_n P_{n-1}; `b[0]` is set to zero.
pub fn jacobi_monic_coeffs(
    jp: &JacobiParams,
    count: usize,
) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let (al, be) = (&jp.alpha, &jp.beta);
    let ab = al + be;
    let two = rat_int(2);
    let four = rat_int(4);
    let mut a = Vec::with_capacity(count);
    let mut b = Vec::with_capacity(count);
    for n in 0..count {
        let nn = rat_int(n as i64);
        let s = &two * &nn + &ab;
        let an = if n == 0 {
            let den = &ab + &two;
            if den.is_zero() {
                return Err(Error::DegenerateJacobi { index: 0 });
            }
            (be - al) / den
        } else {
            let num = be * be - al * al;
            let den = &s * (&s + &two);
            if num.is_zero() {
                Rational::zero()
            } else if den.is_zero() {
                return Err(Error::DegenerateJacobi { index: n });
            } else {
                num / den
            }
        };
        a.push(an);
        let bn = match n {
            0 => Rational::zero(),
            1 => {
                let den = (&ab + &two) * (&ab + &two) * (&ab + rat_int(3));
                if den.is_zero() {
                    return Err(Error::DegenerateJacobi { index: 1 });
                }
                &four * (Rational::one() + al) * (Rational::one() + be) / den
            }
            _ => {
                let den = &s * &s * (&s + Rational::one()) * (&s - Rational::one());
                if den.is_zero() {
                    return Err(Error::DegenerateJacobi { index: n });
                }
                &four * &nn * (&nn + al) * (&nn + be) * (&nn + &ab) / den
            }
        };
        b.push(bn);
    }
    Ok((a, b))
}

/// Monic Jacobi polynomials 0..count-1.
pub fn jacobi_monic_polys(jp: &JacobiParams, count: usize) -> Result<Vec<ExactPoly>> {
    let (a, b) = jacobi_monic_coeffs(jp, count.max(1))?;
    let mut out = vec![ExactPoly::one()];
    for n in 0..count.saturating_sub(1) {
        let mut next = ExactPoly::new(vec![-a[n].clone(), Rational::one()]).mul(&out[n]);
        if n >= 1 {
            next = next.sub(&out[n - 1].scale(&b[n]));
        }
        out.push(next);
    }
    out.truncate(count);
    Ok(out)
}

/// s_n in closed form for the example:
/// 4^{1-2m} 2n(2n-1)(2n+p)(2n+p+1) / ((4n+p-2)(4n+p)^2(4n+p+2)).
pub fn closed_form_s(cfg: &ExampleConfig, n: usize) -> Option<Rational> {
    let p = &cfg.p;
    let nn = rat_int(n as i64);
    let two = rat_int(2);
    let four_n_p = rat_int(4) * &nn + p;
    let den = (&four_n_p - &two) * &four_n_p * &four_n_p * (&four_n_p + &two);
    if den.is_zero() {
        return None;
    }
    let num = &two
        * &nn
        * (&two * &nn - Rational::one())
        * (&two * &nn + p)
        * (&two * &nn + p + Rational::one());
    Some(pow2(2 * (1 - 2 * cfg.m as i64)) * num / den)
}

/// r_n = 2^{1-2m} p(p+2) / ((4n+p)(4n+p+4)), with the factor p cancelled
/// at n = 0 so that p = 0 gives r_0 = 2^{-1-2m}.
pub fn closed_r(cfg: &ExampleConfig, n: usize) -> Rational {
    let p = &cfg.p;
    if n == 0 {
        return pow2(1 - 2 * cfg.m as i64) * (p + rat_int(2)) / (p + rat_int(4));
    }
    let four_n_p = rat_int(4 * n as i64) + p;
    pow2(1 - 2 * cfg.m as i64) * p * (p + rat_int(2)) / (&four_n_p * (&four_n_p + rat_int(4)))
}

/// Compares the derived Q recurrence with the rescaled Jacobi family:
/// r_n = 2^{1-2m} a_n, s_n = 4^{1-2m} b_n, and Q_n(x) = 2^{(1-2m)n} J_n(2^{2m-1} x)
/// as polynomials. Also records the closed form of r_n.
pub fn scaled_q_check(cfg: &ExampleConfig, count: usize) -> Result<CheckReport> {
    let ts = example_tsequence(cfg)?;
    let qr = derive_q(&ts);
    let jp = JacobiParams::for_example(cfg);
    let (a, b) = jacobi_monic_coeffs(&jp, count)?;
    let m = cfg.m as i64;
    let mut report = CheckReport::new("scaled_jacobi");
    for n in 0..count {
        let r = qr.r(n);
        let expected = pow2(1 - 2 * m) * &a[n];
        report.record(format!("r_{n}"), r == expected, || {
            format!("r_{n} = {r}, 2^(1-2m) a_{n} = {expected}")
        });
        let closed = closed_r(cfg, n);
        report.record(format!("r_{n} closed form"), r == closed, || {
            format!("r_{n} = {r}, closed form {closed}")
        });
        if n >= 1 {
            let s = qr.s(n);
            let expected = pow2(2 * (1 - 2 * m)) * &b[n];
            report.record(format!("s_{n}"), s == expected, || {
                format!("s_{n} = {s}, 4^(1-2m) b_{n} = {expected}")
            });
        }
    }
    let q = generate_q(&qr, count)?;
    let jac = jacobi_monic_polys(&jp, count)?;
    for (n, (qn, jn)) in q.iter().zip(&jac).enumerate() {
        let scaled = ExactPoly::new(
            jn.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| c * pow2((2 * m - 1) * (k as i64 - n as i64)))
                .collect(),
        );
        report.record(format!("Q_{n}"), *qn == scaled, || {
            format!("Q_{n} = {qn}, rescaled Jacobi {scaled}")
        });
    }
    Ok(report)
}

/// Which constant in s_n agrees with the t-product and the Jacobi rescaling.
/// The returned check passes when the formula used by the crate agrees with
/// both; the finding records every value and the ratio of the closed form.
pub fn s_constant_resolution(cfg: &ExampleConfig, count: usize) -> Result<(CheckReport, Finding)> {
    let ts = example_tsequence(cfg)?;
    let m = cfg.m;
    let jp = JacobiParams::for_example(cfg);
    let (_, b) = jacobi_monic_coeffs(&jp, count)?;
    let mut report = CheckReport::new("s_constant");
    let mut values = Vec::new();
    let mut ratios = Vec::new();
    for n in 1..count {
        let k = ts.k();
        let mut product = ts.a(n, m)?;
        for l in m + 1..m + k {
            product *= ts.a(n - 1, l)?;
        }
        let generic = s_coefficient(&ts, n);
        let jacobi = pow2(2 * (1 - 2 * m as i64)) * &b[n];
        report.record(
            format!("n={n}"),
            generic == product && generic == jacobi,
            || format!("generic {generic}, t-product {product}, Jacobi {jacobi}"),
        );
        values.push((format!("s_{n} generic"), format_rational(&generic)));
        values.push((format!("s_{n} t-product"), format_rational(&product)));
        values.push((format!("s_{n} Jacobi rescaled"), format_rational(&jacobi)));
        if let Some(closed) = closed_form_s(cfg, n) {
            values.push((format!("s_{n} closed form"), format_rational(&closed)));
            if !generic.is_zero() {
                let ratio = &closed / &generic;
                values.push((
                    format!("s_{n} closed form/generic"),
                    format_rational(&ratio),
                ));
                ratios.push(ratio);
            }
        }
    }
    let detail = if ratios.is_empty() {
        "no closed-form values could be compared".to_string()
    } else if ratios.iter().all(|r| *r == ratios[0]) {
        format!(
            "the generic 4^(4-2m) product is consistent; the closed 4^(1-2m) form equals it times the constant factor {}",
            format_rational(&ratios[0])
        )
    } else {
        "the closed form differs from the generic one by a non-constant factor".to_string()
    };
    let finding = Finding {
        name: format!("s_n constant (m={m}, p={})", cfg.p),
        detail,
        values,
    };
    Ok((report, finding))
}

fn example_terms(
    cfg: &ExampleConfig,
    n: usize,
    j: usize,
) -> Result<(i64, Rational, Rational, Vec<ExactPoly>)> {
    let m = cfg.m;
    if j >= 2 * m {
        return Err(Error::InvalidArgument(format!(
            "offset j = {j} outside 0..{}",
            2 * m
        )));
    }
    let e = ((2 * m - 1) * n + m + j) as i64;
    let nn = rat_int(n as i64);
    let big_n = rat_int(4) * &nn + &cfg.p + rat_int(4);
    let big_d = rat_int(4) * &nn + &cfg.p + rat_int(2);
    let jac = jacobi_monic_polys(&JacobiParams::for_example(cfg), n + 2)?;
    let t2m = t_poly(2 * m as i64);
    let composed = jac.iter().map(|p| p.compose(&t2m)).collect();
    Ok((e, big_n, big_d, composed))
}

/// P_{2mn+m+j+1} from Jacobi polynomials composed with T_{2m}:
/// (K_1 J_{n+1}(T_{2m}) + K_2 J_n(T_{2m})) / U_{m-1}, where with
/// e = (2m-1)n+m+j, N = 4n+p+4, D = 4n+p+2,
///
/// for j < m:  K_1 = U_j / 2^e,
///             K_2 = (2n+1)((2n+2) U_{2m-2-j} + p T_m U_{m-2-j}) / (2^{e-1} D N);
/// for j >= m: K_1 = ((2n+2+p) U_j - p T_m U_{j-m}) / (2^{e-1} N),
///             K_2 = (2n+1)(2n+2)(2n+2+p) U_{2m-2-j} / (2^{e-2} D N^2).
pub fn example_p_explicit(cfg: &ExampleConfig, n: usize, j: usize) -> Result<ExactPoly> {
    let (e, big_n, big_d, jac) = example_terms(cfg, n, j)?;
    let m = cfg.m as i64;
    let ji = j as i64;
    let p = &cfg.p;
    let nn = rat_int(n as i64);
    let one = Rational::one();
    let two = rat_int(2);
    let two_n1 = &two * &nn + &one;
    let two_n2 = &two * &nn + &two;
    let (k1, k2) = if ji < m {
        let k1 = u_poly(ji).scale(&pow2(-e));
        let inner = u_poly(2 * m - 2 - ji)
            .scale(&two_n2)
            .add(&t_poly(m).mul(&u_poly(m - 2 - ji)).scale(p));
        let k2 = inner.scale(&(&two_n1 / (pow2(e - 1) * &big_d * &big_n)));
        (k1, k2)
    } else {
        let inner = u_poly(ji)
            .scale(&(&two_n2 + p))
            .sub(&t_poly(m).mul(&u_poly(ji - m)).scale(p));
        let k1 = inner.scale(&(pow2(1 - e) / &big_n));
        let c = &two_n1 * &two_n2 * (&two_n2 + p) / (pow2(e - 2) * &big_d * &big_n * &big_n);
        let k2 = u_poly(2 * m - 2 - ji).scale(&c);
        (k1, k2)
    };
    k1.mul(&jac[n + 1])
        .add(&k2.mul(&jac[n]))
        .div_exact(&u_poly(m - 1))
}

/// The same representation with the alternative coefficient form:
/// K_1 = ((2n+2+p) U_j - p T_m U_{j-m}) / (2^{e-1} N) for every j and
/// K_2 = (2n+1)((2n+2) U_{2m-2-j} - p U_{m-1} T_{m-j-1}) / (2^e D N).
/// Only the last offset j = 2m-1, where U_{2m-2-j} and T_{m-j-1} vanish,
/// agrees with [`example_p_explicit`]; elsewhere the quotient is usually
/// not even a polynomial.
pub fn example_p_variant(cfg: &ExampleConfig, n: usize, j: usize) -> Result<ExactPoly> {
    let (e, big_n, big_d, jac) = example_terms(cfg, n, j)?;
    let m = cfg.m as i64;
    let ji = j as i64;
    let p = &cfg.p;
    let nn = rat_int(n as i64);
    let two = rat_int(2);
    let two_n2 = &two * &nn + &two;
    let k1 = u_poly(ji)
        .scale(&(&two_n2 + p))
        .sub(&t_poly(m).mul(&u_poly(ji - m)).scale(p))
        .scale(&(pow2(1 - e) / &big_n));
    let k2 = u_poly(2 * m - 2 - ji)
        .scale(&two_n2)
        .sub(&u_poly(m - 1).mul(&t_poly(m - ji - 1)).scale(p))
        .scale(&((&two * &nn + Rational::one()) / (pow2(e) * &big_d * &big_n)));
    k1.mul(&jac[n + 1])
        .add(&k2.mul(&jac[n]))
        .div_exact(&u_poly(m - 1))
}

/// (w_Q, w_P):
/// w_Q(x) = 2^{-p/2} (1 - 2^{2m-1} x)^{-1/2} (1 + 2^{2m-1} x)^{(p+1)/2} on
/// [-2^{1-2m}, 2^{1-2m}] and w_P(x) = |T_m(x)|^p / sqrt(1-x^2) on [-1, 1],
/// both in factored form.
pub fn example_weight<R: Real>(cfg: &ExampleConfig) -> Result<(WeightFn<R>, WeightFn<R>)> {
    cfg.require_measure()?;
    let m = cfg.m;
    let p = cfg.p_real::<R>();
    let half = real::<R>(0.5);
    let edge = real::<R>(2.0).powi(1 - 2 * m as i32);
    let constant = pow_real(real::<R>(2.0), real_m1::<R>(m) * p);
    let wq = WeightFn::new(
        move |_| constant,
        vec![
            Singularity {
                location: edge,
                exponent: -half,
            },
            Singularity {
                location: -edge,
                exponent: (p + R::one()) * half,
            },
        ],
        (-edge, edge),
    )?;
    let mut factors = vec![
        Singularity {
            location: -R::one(),
            exponent: -half,
        },
        Singularity {
            location: R::one(),
            exponent: -half,
        },
    ];
    for z in zeros_t::<R>(m as i64)? {
        factors.push(Singularity {
            location: z,
            exponent: p,
        });
    }
    let wp = WeightFn::new(move |_| constant, factors, (-R::one(), R::one()))?;
    Ok((wq, wp))
}

fn real_m1<R: Real>(m: usize) -> R {
    crate::real::real_int(m as i64 - 1)
}

/// Quadrature values against the Beta closed forms
/// μ_Q(R) = 2^{2-2m} (p+1)/(p+2) B((p+1)/2, 1/2) and C = B((p+1)/2, 1/2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaValues<R> {
    pub mu_q: R,
    pub mu_q_closed: R,
    pub c: R,
    pub c_closed: R,
    pub mass: R,
}

pub fn beta_values<R: Real>(cfg: &ExampleConfig, tol: R) -> Result<BetaValues<R>> {
    let (wq, _) = example_weight::<R>(cfg)?;
    let m = cfg.m;
    let p = cfg.p_real::<R>();
    let one = R::one();
    let half = real::<R>(0.5);
    let b = beta((p + one) * half, half);
    let mu_q_closed = real::<R>(2.0).powi(2 - 2 * m as i32) * (p + one) / (p + one + one) * b;
    let mu_q = total_mass(&wq, tol)?;
    let c = compute_c(&wq, m, tol)?;
    let ts = example_tsequence(cfg)?;
    let mass = compute_mass_m(mu_q, c, &ts.t(m), m)?;
    Ok(BetaValues {
        mu_q,
        mu_q_closed,
        c,
        c_closed: b,
        mass,
    })
}

/// Checks the Beta closed forms within `tol_values` and M = 0 within
/// `tol_mass`.
pub fn beta_identities<R: Real>(
    cfg: &ExampleConfig,
    quad_tol: R,
    tol_values: R,
    tol_mass: R,
) -> Result<(CheckReport, BetaValues<R>)> {
    let v = beta_values(cfg, quad_tol)?;
    let mut report = CheckReport::new("beta_identities");
    let case = |what: &str| format!("{what} m={} p={}", cfg.m, cfg.p);
    report.record(
        case("mu_Q"),
        (v.mu_q - v.mu_q_closed).abs() <= tol_values,
        || format!("quadrature {}, closed form {}", v.mu_q, v.mu_q_closed),
    );
    report.record(case("C"), (v.c - v.c_closed).abs() <= tol_values, || {
        format!("quadrature {}, closed form {}", v.c, v.c_closed)
    });
    report.record(case("M"), v.mass.abs() <= tol_mass, || {
        format!("M = {}", v.mass)
    });
    Ok((report, v))
}
