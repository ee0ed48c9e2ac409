//! The constrained coefficient sequence (t_n) and the monic families it and
//! its derived sequences generate.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::real::{rational_to_real, Real};
use crate::scalar::{rat, Rational};
use crate::tridiag::symmetric_tridiagonal_eigen;

type BlockFn = dyn Fn(usize) -> [Rational; 4] + Send + Sync;
type IndexFn = dyn Fn(usize) -> Rational + Send + Sync;

#[derive(Clone)]
enum Source {
    /// Block n yields (t_{2mn}, t_{2mn+1}, t_{2mn+m}, t_{2mn+m+1}); all
    /// other offsets are 1/4.
    Blocks(Arc<BlockFn>),
    /// Arbitrary per-index values, used to describe sequences that may
    /// break the constraints.
    Raw(Arc<IndexFn>),
}

/// A coefficient sequence t_0, t_1, ... organised in blocks of length 2m.
#[derive(Clone)]
pub struct TSequence {
    m: usize,
    source: Source,
}

impl fmt::Debug for TSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.source {
            Source::Blocks(_) => "blocks",
            Source::Raw(_) => "raw",
        };
        f.debug_struct("TSequence")
            .field("m", &self.m)
            .field("source", &kind)
            .finish()
    }
}

/// Position of a linear index inside the block structure: idx = 2mn + j.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIndex {
    pub n: usize,
    pub j: usize,
}

impl BlockIndex {
    pub fn from_linear(idx: usize, m: usize) -> Self {
        let k = 2 * m;
        BlockIndex {
            n: idx / k,
            j: idx % k,
        }
    }

    pub fn linear(&self, m: usize) -> usize {
        2 * m * self.n + self.j
    }
}

impl TSequence {
    /// Sequence defined by its four free sub-sequences.
    pub fn from_blocks<F>(m: usize, free: F) -> Result<Self>
    where
        F: Fn(usize) -> [Rational; 4] + Send + Sync + 'static,
    {
        check_m(m)?;
        Ok(TSequence {
            m,
            source: Source::Blocks(Arc::new(free)),
        })
    }

    /// Sequence given index by index, with no structure assumed.
    pub fn from_fn<F>(m: usize, t: F) -> Result<Self>
    where
        F: Fn(usize) -> Rational + Send + Sync + 'static,
    {
        check_m(m)?;
        Ok(TSequence {
            m,
            source: Source::Raw(Arc::new(t)),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Block length k = 2m.
    pub fn k(&self) -> usize {
        2 * self.m
    }

    pub fn t(&self, idx: usize) -> Rational {
        match &self.source {
            Source::Raw(f) => f(idx),
            Source::Blocks(f) => {
                let BlockIndex { n, j } = BlockIndex::from_linear(idx, self.m);
                let m = self.m;
                if j == 0 {
                    f(n)[0].clone()
                } else if j == 1 {
                    f(n)[1].clone()
                } else if j == m {
                    f(n)[2].clone()
                } else if j == m + 1 {
                    f(n)[3].clone()
                } else {
                    rat(1, 4)
                }
            }
        }
    }

    /// a_n^(l) = t_{2mn+l}. The offset may exceed the block length; a_0^(0)
    /// is undefined.
    pub fn a(&self, n: usize, l: usize) -> Result<Rational> {
        if n == 0 && l == 0 {
            return Err(Error::UndefinedCoefficient {
                block: 0,
                offset: 0,
            });
        }
        Ok(self.t(self.k() * n + l))
    }

    /// Real copies of t_0 .. t_{count-1}.
    pub fn to_real<R: Real>(&self, count: usize) -> Vec<R> {
        (0..count).map(|i| rational_to_real(&self.t(i))).collect()
    }

    /// True when every t_1 .. t_{count-1} is strictly positive.
    pub fn is_positive(&self, count: usize) -> bool {
        (1..count).all(|i| self.t(i) > Rational::zero())
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "block parameter m must be positive".into(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// m = 1 forces t_2 = 0.
    BlockSizeOne,
    NonzeroT0,
    ZeroTerm,
    NotQuarter,
    BlockSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub index: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidSequence(v.message)),
        }
    }
}

/// Checks the block constraints for blocks 0..blocks, in index order.
pub fn validate_tsequence(ts: &TSequence, blocks: usize) -> Result<ValidationReport> {
    if blocks == 0 {
        return Err(Error::InvalidArgument(
            "at least one block must be validated".into(),
        ));
    }
    let mut report = ValidationReport::default();
    let m = ts.m();
    let k = ts.k();
    if m == 1 {
        report.violations.push(Violation {
            kind: ViolationKind::BlockSizeOne,
            index: None,
            message: "m = 1 is excluded: the block constraints would force t_2 = 0".into(),
        });
        return Ok(report);
    }
    let quarter = rat(1, 4);
    let half = rat(1, 2);
    for n in 0..blocks {
        let base = k * n;
        for j in 0..k {
            let idx = base + j;
            let t = ts.t(idx);
            if idx == 0 {
                if !t.is_zero() {
                    report.violations.push(Violation {
                        kind: ViolationKind::NonzeroT0,
                        index: Some(0),
                        message: format!("t_0 must be 0, found {t}"),
                    });
                }
                continue;
            }
            if t.is_zero() {
                report.violations.push(Violation {
                    kind: ViolationKind::ZeroTerm,
                    index: Some(idx),
                    message: format!("t_{idx} vanishes"),
                });
            }
            let free = j == 0 || j == 1 || j == m || j == m + 1;
            if !free && t != quarter {
                report.violations.push(Violation {
                    kind: ViolationKind::NotQuarter,
                    index: Some(idx),
                    message: format!("t_{idx} = {t} but offset {j} requires 1/4"),
                });
            }
        }
        for offset in [0, m] {
            let sum = ts.t(base + offset) + ts.t(base + offset + 1);
            if sum != half {
                report.violations.push(Violation {
                    kind: ViolationKind::BlockSum,
                    index: Some(base + offset),
                    message: format!(
                        "t_{} + t_{} = {sum}, expected 1/2",
                        base + offset,
                        base + offset + 1
                    ),
                });
            }
        }
    }
    report.violations.sort_by_key(|v| v.index);
    Ok(report)
}

/// Number of whole blocks touched by indices below `count`.
pub fn blocks_for(ts: &TSequence, count: usize) -> usize {
    count.div_ceil(ts.k()).max(1)
}

/// Monic P_0 .. P_{count-1} from P_{n+1} = x P_n - t_n P_{n-1}.
pub fn generate_p(ts: &TSequence, count: usize) -> Result<Vec<ExactPoly>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    validate_tsequence(ts, blocks_for(ts, count))?.into_result()?;
    Ok(three_term(count, |_| Rational::zero(), |n| ts.t(n)))
}

/// Coefficients of Q_{n+1} = (x - r_n) Q_n - s_n Q_{n-1}.
#[derive(Clone)]
pub struct QRecurrence {
    r: Arc<IndexFn>,
    s: Arc<IndexFn>,
}

impl fmt::Debug for QRecurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = (0..3).map(|n| self.r(n).to_string()).collect();
        let s: Vec<String> = (1..4).map(|n| self.s(n).to_string()).collect();
        write!(
            f,
            "QRecurrence {{ r: [{}, ..], s: [_, {}, ..] }}",
            r.join(", "),
            s.join(", ")
        )
    }
}

impl QRecurrence {
    pub fn new<FR, FS>(r: FR, s: FS) -> Self
    where
        FR: Fn(usize) -> Rational + Send + Sync + 'static,
        FS: Fn(usize) -> Rational + Send + Sync + 'static,
    {
        QRecurrence {
            r: Arc::new(r),
            s: Arc::new(s),
        }
    }

    pub fn r(&self, n: usize) -> Rational {
        (self.r)(n)
    }

    /// s_n for n >= 1; s_0 never enters the recurrence.
    pub fn s(&self, n: usize) -> Rational {
        (self.s)(n)
    }
}

/// Monic Q_0 .. Q_{count-1}.
pub fn generate_q(qr: &QRecurrence, count: usize) -> Result<Vec<ExactPoly>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    Ok(three_term(count, |n| qr.r(n), |n| qr.s(n)))
}

fn three_term(
    count: usize,
    shift: impl Fn(usize) -> Rational,
    coupling: impl Fn(usize) -> Rational,
) -> Vec<ExactPoly> {
    let mut out = Vec::with_capacity(count);
    out.push(ExactPoly::one());
    for n in 0..count.saturating_sub(1) {
        let x_minus = ExactPoly::new(vec![-shift(n), Rational::one()]);
        let mut next = x_minus.mul(&out[n]);
        if n >= 1 {
            next = next.sub(&out[n - 1].scale(&coupling(n)));
        }
        out.push(next);
    }
    out
}

/// h_n / h_0 = t_1 t_2 ... t_n for n < count.
pub fn norm_products(ts: &TSequence, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut acc = Rational::one();
    for n in 0..count {
        if n >= 1 {
            acc *= ts.t(n);
        }
        out.push(acc.clone());
    }
    out
}

/// Zeros of P_n as eigenvalues of the symmetric Jacobi matrix with zero
/// diagonal and off-diagonals sqrt(t_i), i = 1..n-1. Needs t_i > 0.
pub fn p_zeros<R: Real>(ts: &TSequence, n: usize) -> Result<Vec<R>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    if !ts.is_positive(n) {
        return Err(Error::InvalidArgument(
            "zeros via the Jacobi matrix need t_i > 0".into(),
        ));
    }
    let off: Vec<R> = (1..n)
        .map(|i| rational_to_real::<R>(&ts.t(i)).sqrt())
        .collect();
    Ok(symmetric_tridiagonal_eigen(&vec![R::zero(); n], &off)?.values)
}

/// Result of the zero-structure check for P_1 .. P_max.
#[derive(Debug, Clone, PartialEq)]
pub struct InterlacingReport {
    pub max_degree: usize,
    /// Smallest distance between neighbouring zeros of any single P_n.
    pub min_gap: f64,
    /// Smallest distance between a zero of P_n and a zero of P_{n+1}.
    pub min_separation: f64,
    pub interlacing: bool,
}

/// Checks that zeros of consecutive P_n strictly interlace.
pub fn interlacing_check(ts: &TSequence, max_degree: usize) -> Result<InterlacingReport> {
    let mut min_gap = f64::INFINITY;
    let mut min_separation = f64::INFINITY;
    let mut interlacing = true;
    let mut prev: Vec<f64> = Vec::new();
    for n in 1..=max_degree {
        let z: Vec<f64> = p_zeros(ts, n)?;
        for w in z.windows(2) {
            min_gap = min_gap.min(w[1] - w[0]);
        }
        // each zero of P_{n-1} lies strictly between consecutive zeros of P_n
        for (i, y) in prev.iter().enumerate() {
            let lo = y - z[i];
            let hi = z[i + 1] - y;
            min_separation = min_separation.min(lo.min(hi));
            if lo <= 0.0 || hi <= 0.0 {
                interlacing = false;
            }
        }
        prev = z;
    }
    Ok(InterlacingReport {
        max_degree,
        min_gap,
        min_separation,
        interlacing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::{t_hat, u_hat};
    use crate::poly::Degree;
    use crate::scalar::rat_int;

    fn chebyshev_t_sequence(m: usize) -> TSequence {
        TSequence::from_blocks(m, |n| {
            if n == 0 {
                [rat_int(0), rat(1, 2), rat(1, 4), rat(1, 4)]
            } else {
                [rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)]
            }
        })
        .unwrap()
    }

    #[test]
    fn block_index_roundtrip() {
        let b = BlockIndex::from_linear(17, 3);
        assert_eq!(b, BlockIndex { n: 2, j: 5 });
        assert_eq!(b.linear(3), 17);
    }

    #[test]
    fn coefficient_a_undefined_at_origin() {
        let ts = chebyshev_t_sequence(2);
        assert!(matches!(
            ts.a(0, 0),
            Err(Error::UndefinedCoefficient { .. })
        ));
        assert_eq!(ts.a(0, 1).unwrap(), rat(1, 2));
        // offsets beyond the block reach into the next one
        assert_eq!(ts.a(0, 5).unwrap(), ts.t(5));
    }

    #[test]
    fn quarter_violation_reported_at_index() {
        let ts = TSequence::from_fn(3, |i| match i {
            0 => rat_int(0),
            1 => rat(1, 2),
            5 => rat(3, 10),
            _ => rat(1, 4),
        })
        .unwrap();
        let report = validate_tsequence(&ts, 2).unwrap();
        let v = report.first().unwrap();
        assert_eq!(v.kind, ViolationKind::NotQuarter);
        assert_eq!(v.index, Some(5));
    }

    #[test]
    fn m_one_rejected() {
        let ts = TSequence::from_fn(1, |i| if i == 1 { rat(1, 2) } else { rat(1, 4) }).unwrap();
        let report = validate_tsequence(&ts, 3).unwrap();
        assert_eq!(report.first().unwrap().kind, ViolationKind::BlockSizeOne);
        assert!(generate_p(&ts, 4).is_err());
    }

    #[test]
    fn zero_term_and_sum_violations() {
        let ts = TSequence::from_blocks(2, |n| {
            if n == 1 {
                [rat_int(0), rat(1, 2), rat(1, 4), rat(1, 3)]
            } else {
                [rat_int(0), rat(1, 2), rat(1, 4), rat(1, 4)]
            }
        })
        .unwrap();
        let report = validate_tsequence(&ts, 2).unwrap();
        let kinds: Vec<_> = report
            .violations
            .iter()
            .map(|v| (v.kind, v.index))
            .collect();
        assert!(kinds.contains(&(ViolationKind::ZeroTerm, Some(4))));
        assert!(kinds.contains(&(ViolationKind::BlockSum, Some(6))));
        assert!(!report.is_valid());
    }

    #[test]
    fn chebyshev_case_gives_monic_t() {
        let ts = chebyshev_t_sequence(2);
        let p = generate_p(&ts, 13).unwrap();
        for (n, pn) in p.iter().enumerate() {
            assert_eq!(pn, &t_hat(n as i64), "n = {n}");
        }
        assert_eq!(
            p[2],
            ExactPoly::new(vec![rat(-1, 2), rat_int(0), rat_int(1)])
        );
    }

    #[test]
    fn generated_p_is_monic_with_exact_degree() {
        let ts = chebyshev_t_sequence(3);
        for (n, pn) in generate_p(&ts, 20).unwrap().iter().enumerate() {
            assert!(pn.is_monic());
            assert_eq!(pn.degree(), Degree::Finite(n));
        }
    }

    #[test]
    fn q_from_constant_coefficients() {
        let u = QRecurrence::new(|_| rat_int(0), |_| rat(1, 4));
        for (n, q) in generate_q(&u, 10).unwrap().iter().enumerate() {
            assert_eq!(q, &u_hat(n as i64));
        }
        let t = QRecurrence::new(
            |_| rat_int(0),
            |n| if n == 1 { rat(1, 2) } else { rat(1, 4) },
        );
        for (n, q) in generate_q(&t, 10).unwrap().iter().enumerate() {
            assert_eq!(q, &t_hat(n as i64));
        }
        let shifted = QRecurrence::new(|_| rat(1, 3), |_| rat(1, 4));
        assert_eq!(
            generate_q(&shifted, 2).unwrap()[1],
            ExactPoly::new(vec![rat(-1, 3), rat_int(1)])
        );
    }

    #[test]
    fn norm_products_start_at_one() {
        let ts = chebyshev_t_sequence(2);
        let h = norm_products(&ts, 4);
        assert_eq!(h[0], rat_int(1));
        assert_eq!(h[1], rat(1, 2));
        assert_eq!(h[3], rat(1, 32));
    }

    #[test]
    fn chebyshev_zeros_interlace() {
        let ts = chebyshev_t_sequence(2);
        let z: Vec<f64> = p_zeros(&ts, 5).unwrap();
        for (i, zi) in z.iter().enumerate() {
            let expected = -((2 * i + 1) as f64 * std::f64::consts::PI / 10.0).cos();
            assert!((zi - expected).abs() < 1e-14);
        }
        let rep = interlacing_check(&ts, 30).unwrap();
        assert!(rep.interlacing && rep.min_gap > 1e-10);
    }
}
