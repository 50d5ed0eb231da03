//! The factorization recipe shared by the theorem dispatchers: pick `alpha1`
//! and `a` from prescribed forms, set `alpha2 = 3n / alpha1`,
//! `r = ((alpha1 + alpha2)/2 - a)/2` and assemble.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{assemble_with_alpha, Provenance, QuadrupleCertificate};
use crate::error::{Error, Result};
use crate::pell::enumerate_norm_class;
use crate::ring::{RingContext, RingElement};

pub const DEFAULT_RETRY_BUDGET: usize = 64;
pub const RETRY_BUDGET_ENV: &str = "QUADRING_RETRY_BUDGET";

/// The retry budget, overridable through `QUADRING_RETRY_BUDGET`.
pub fn default_budget() -> usize {
    std::env::var(RETRY_BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_RETRY_BUDGET)
}

/// `scale * (x_mod * p + x_off, y_mod * q + y_off)` with the inner element of norm `norm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementForm {
    pub norm: i64,
    pub scale: i64,
    pub x_mod: i64,
    pub x_off: i64,
    pub y_mod: i64,
    pub y_off: i64,
    /// Names for `(p, q)` in provenance.
    pub names: (&'static str, &'static str),
}

impl ElementForm {
    pub const fn new(
        norm: i64,
        (x_mod, x_off): (i64, i64),
        (y_mod, y_off): (i64, i64),
        names: (&'static str, &'static str),
    ) -> Self {
        Self {
            norm,
            scale: 1,
            x_mod,
            x_off,
            y_mod,
            y_off,
            names,
        }
    }

    pub const fn scaled(mut self, scale: i64) -> Self {
        self.scale = scale;
        self
    }

    /// `(p, q)` if the unscaled `u` has this shape.
    pub fn params(&self, u: &RingElement) -> Option<(BigInt, BigInt)> {
        let (p, rx) = (&u.x - self.x_off).div_rem(&BigInt::from(self.x_mod));
        let (q, ry) = (&u.y - self.y_off).div_rem(&BigInt::from(self.y_mod));
        (rx.is_zero() && ry.is_zero()).then_some((p, q))
    }

    /// The first `count` elements of this form, as sign variants of the norm
    /// class in enumeration order, each multiplied by `scale`.
    pub fn candidates(&self, ctx: &RingContext, count: usize) -> Result<Vec<Candidate>> {
        let mut out = Vec::with_capacity(count);
        let mut pool = count.max(8);
        loop {
            out.clear();
            let class = enumerate_norm_class(ctx, self.norm, pool)?;
            'outer: for u in &class {
                for v in u.sign_variants() {
                    if let Some((p, q)) = self.params(&v) {
                        out.push(Candidate {
                            value: v.scale_i64(self.scale),
                            p,
                            q,
                        });
                        if out.len() == count {
                            break 'outer;
                        }
                    }
                }
            }
            if out.len() == count || pool >= 64 * count.max(8) {
                return Ok(out);
            }
            pool *= 2;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub value: RingElement,
    pub p: BigInt,
    pub q: BigInt,
}

/// `alpha1` is either fixed or drawn from a form.
#[derive(Clone, Debug)]
pub enum AlphaSource {
    Fixed(RingElement),
    Form(ElementForm),
}

/// Tries `(alpha1_i, a_j)` pairs in order of `i + j`, then `i`, stopping at
/// the first verified certificate or after `budget` pairs.
pub fn run_recipe(
    ctx: &RingContext,
    n: &RingElement,
    alpha_source: &AlphaSource,
    a_form: &ElementForm,
    budget: usize,
    base: Provenance,
) -> Result<QuadrupleCertificate> {
    let three_n = n.scale_i64(3);
    let (alphas, alpha_names): (Vec<Candidate>, Option<(&str, &str)>) = match alpha_source {
        AlphaSource::Fixed(v) => (
            vec![Candidate {
                value: v.clone(),
                p: BigInt::zero(),
                q: BigInt::zero(),
            }],
            None,
        ),
        AlphaSource::Form(f) => (f.candidates(ctx, budget)?, Some(f.names)),
    };
    let a_cands = a_form.candidates(ctx, budget)?;
    let mut attempts = 0usize;
    for sum in 0..alphas.len() + a_cands.len() {
        for i in 0..=sum.min(alphas.len() - 1) {
            let j = sum - i;
            if j >= a_cands.len() {
                continue;
            }
            if attempts == budget {
                return Err(Error::BudgetExhausted {
                    n: n.to_string(),
                    attempts,
                });
            }
            attempts += 1;
            let (alpha1, a) = (&alphas[i], &a_cands[j]);
            let Some(cert) = try_pair(ctx, n, &three_n, &alpha1.value, &a.value) else {
                continue;
            };
            let mut prov = base.clone();
            if let Some((pn, qn)) = alpha_names {
                prov = prov.with(pn, alpha1.p.clone()).with(qn, alpha1.q.clone());
            }
            let (pn, qn) = a_form.names;
            prov = prov
                .with(pn, a.p.clone())
                .with(qn, a.q.clone())
                .with("attempt", attempts as i64);
            return Ok(cert.with_provenance(prov));
        }
    }
    Err(Error::BudgetExhausted {
        n: n.to_string(),
        attempts,
    })
}

/// One recipe step: `alpha2 = 3n / alpha1`, `s = (alpha1 + alpha2)/2`,
/// `r = (s - a)/2`; the (1,4) root is `(alpha1 - alpha2)/2`.
pub fn try_pair(
    ctx: &RingContext,
    n: &RingElement,
    three_n: &RingElement,
    alpha1: &RingElement,
    a: &RingElement,
) -> Option<QuadrupleCertificate> {
    let alpha2 = ctx.exact_div(three_n, alpha1).ok()??;
    let s = (alpha1 + &alpha2).half()?;
    let r = (&s - a).half()?;
    let alpha = (alpha1 - &alpha2).half()?;
    assemble_with_alpha(ctx, a, &r, n, Some(&alpha))
}
