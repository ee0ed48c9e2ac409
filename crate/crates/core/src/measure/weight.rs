use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::real::{pow_real, Real};

/// Algebraic factor |x - location|^exponent of a weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singularity<R> {
    pub location: R,
    pub exponent: R,
}

type Regular<R> = Arc<dyn Fn(R) -> R + Send + Sync>;

/// Weight in factored form
/// `w(x) = regular(x) * prod_i |x - c_i|^{e_i}` on `[support.0, support.1]`,
/// where `regular` is smooth and positive on the support.
///
/// Keeping the algebraic factors separate lets quadrature evaluate them from
/// distances to the interval ends instead of from `x` itself, and tells it
/// where to split.
#[derive(Clone)]
pub struct WeightFn<R> {
    regular: Regular<R>,
    singularities: Vec<Singularity<R>>,
    support: (R, R),
}

impl<R: fmt::Debug> fmt::Debug for WeightFn<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFn")
            .field("support", &self.support)
            .field("singularities", &self.singularities)
            .finish()
    }
}

impl<R: Real> WeightFn<R> {
    /// Builds a weight. Factors sharing a location are merged and zero
    /// exponents dropped; factors inside the support must be integrable.
    pub fn new<F>(regular: F, singularities: Vec<Singularity<R>>, support: (R, R)) -> Result<Self>
    where
        F: Fn(R) -> R + Send + Sync + 'static,
    {
        if !(support.0 < support.1) {
            return Err(Error::InvalidArgument(format!(
                "empty support [{}, {}]",
                support.0, support.1
            )));
        }
        let singularities = merge(singularities);
        for s in &singularities {
            let inside = s.location >= support.0 && s.location <= support.1;
            if inside && s.exponent <= -R::one() {
                return Err(Error::Divergent(format!(
                    "exponent {} at {} is not integrable",
                    s.exponent, s.location
                )));
            }
        }
        Ok(WeightFn {
            regular: Arc::new(regular),
            singularities,
            support,
        })
    }

    /// Builds a weight without the integrability check; the caller is
    /// responsible for factors that only matter away from where it integrates.
    pub(crate) fn new_unchecked<F>(
        regular: F,
        singularities: Vec<Singularity<R>>,
        support: (R, R),
    ) -> Self
    where
        F: Fn(R) -> R + Send + Sync + 'static,
    {
        WeightFn {
            regular: Arc::new(regular),
            singularities: merge(singularities),
            support,
        }
    }

    pub fn support(&self) -> (R, R) {
        self.support
    }

    pub fn singularities(&self) -> &[Singularity<R>] {
        &self.singularities
    }

    pub fn regular(&self, x: R) -> R {
        (self.regular)(x)
    }

    /// Exponent of the factor located exactly at `c` (zero if none).
    pub fn exponent_at(&self, c: R) -> R {
        self.singularities
            .iter()
            .find(|s| s.location == c)
            .map(|s| s.exponent)
            .unwrap_or_else(R::zero)
    }

    /// Same weight with the factor |x - c|^delta multiplied in.
    pub fn with_factor(&self, c: R, delta: R) -> Result<Self> {
        let mut s = self.singularities.clone();
        s.push(Singularity {
            location: c,
            exponent: delta,
        });
        let regular = self.regular.clone();
        WeightFn::new(move |x| regular(x), s, self.support)
    }

    /// Same factors and regular part on a different support.
    pub fn restricted(&self, support: (R, R)) -> Result<Self> {
        let regular = self.regular.clone();
        WeightFn::new(move |x| regular(x), self.singularities.clone(), support)
    }

    pub fn eval(&self, x: R) -> R {
        let mut v = self.regular(x);
        for s in &self.singularities {
            v = v * pow_real((x - s.location).abs(), s.exponent);
        }
        v
    }

    /// Evaluates with the distances to the ends `a`, `b` of the current
    /// integration interval supplied separately, so that factors sitting at
    /// `a` or `b` see an accurate distance.
    pub fn eval_split(&self, x: R, a: R, dist_a: R, b: R, dist_b: R) -> R {
        let mut v = self.regular(x);
        for s in &self.singularities {
            let d = if s.location == a {
                dist_a
            } else if s.location == b {
                dist_b
            } else {
                (x - s.location).abs()
            };
            v = v * pow_real(d, s.exponent);
        }
        v
    }

    /// The product of every factor except those at `a` and `b`.
    pub fn eval_interior(&self, x: R, a: R, b: R) -> R {
        let mut v = self.regular(x);
        for s in &self.singularities {
            if s.location != a && s.location != b {
                v = v * pow_real((x - s.location).abs(), s.exponent);
            }
        }
        v
    }

    /// Factor locations strictly inside (a, b), ascending.
    pub fn breakpoints(&self, a: R, b: R) -> Vec<R> {
        let mut pts: Vec<R> = self
            .singularities
            .iter()
            .map(|s| s.location)
            .filter(|&c| c > a && c < b)
            .collect();
        pts.sort_by(|x, y| x.partial_cmp(y).expect("finite locations"));
        pts.dedup();
        pts
    }
}

fn merge<R: Real>(mut list: Vec<Singularity<R>>) -> Vec<Singularity<R>> {
    list.sort_by(|a, b| {
        a.location
            .partial_cmp(&b.location)
            .expect("finite locations")
    });
    let mut out: Vec<Singularity<R>> = Vec::with_capacity(list.len());
    for s in list {
        match out.last_mut() {
            Some(last) if last.location == s.location => last.exponent = last.exponent + s.exponent,
            _ => out.push(s),
        }
    }
    out.retain(|s| s.exponent != R::zero());
    out
}
