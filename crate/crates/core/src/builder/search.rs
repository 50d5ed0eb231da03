//! Direct search over the hypotheses `3n = alpha1 alpha2`, `ab + n = r^2`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::recipe::try_pair;
use super::{Provenance, QuadrupleCertificate};
use crate::pell::{fundamental_unit, representatives};
use crate::ring::{RingContext, RingElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest `|Nm(u)|` for the small factor of `alpha1`.
    pub factor_norm_bound: u64,
    /// Largest `|Nm(u)|` for the small factor of `a`.
    pub a_norm_bound: u64,
    /// Unit powers `eps^j` with `|j| <= unit_power_bound`.
    pub unit_power_bound: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self {
            factor_norm_bound: 100,
            a_norm_bound: 40,
            unit_power_bound: 2,
        }
    }
}

impl SearchBounds {
    /// Every bound doubled, the unit power bound increased by one.
    pub fn raised(self) -> Self {
        Self {
            factor_norm_bound: self.factor_norm_bound * 2,
            a_norm_bound: self.a_norm_bound * 2,
            unit_power_bound: self.unit_power_bound + 1,
        }
    }
}

/// Non-zero `u` with `|Nm(u)| <= bound` up to units, all signs, ordered by
/// `|Nm(u)|`, then the sign of the norm (positive first), then
/// representative order.
fn small_elements(ctx: &RingContext, bound: u64, filter: impl Fn(i64) -> bool) -> Vec<(i64, RingElement)> {
    let mut out = Vec::new();
    for abs in 1..=bound as i64 {
        for norm in [abs, -abs] {
            if !filter(norm) {
                continue;
            }
            for rep in representatives(ctx, norm) {
                for v in [rep.clone(), -rep] {
                    if !out.iter().any(|(_, w)| *w == v) {
                        out.push((norm, v));
                    }
                }
            }
        }
    }
    out
}

/// `eps^0, eps^1, eps^-1, eps^2, eps^-2, ...`
fn unit_powers(ctx: &RingContext, bound: u32) -> Vec<(i64, RingElement)> {
    let eps = fundamental_unit(ctx).value;
    let inv = eps.conj();
    let mut out = vec![(0, RingElement::one())];
    let (mut up, mut down) = (RingElement::one(), RingElement::one());
    for j in 1..=bound as i64 {
        up = ctx.mul(&up, &eps);
        down = ctx.mul(&down, &inv);
        out.push((j, up.clone()));
        out.push((-j, down.clone()));
    }
    out
}

/// Products `u * eps^j`, grouped by `|Nm(u)|`, then unit power, then `u`.
fn products(
    ctx: &RingContext,
    small: &[(i64, RingElement)],
    units: &[(i64, RingElement)],
) -> Vec<(i64, RingElement)> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < small.len() {
        let abs = small[start].0.abs();
        let end = start + small[start..].iter().take_while(|(n, _)| n.abs() == abs).count();
        for (j, eps) in units {
            for (_, u) in &small[start..end] {
                out.push((*j, ctx.mul(u, eps)));
            }
        }
        start = end;
    }
    out
}

/// First certificate in the fixed enumeration order: `alpha1` over small
/// divisors of `Nm(3n)` times unit powers, then `a` over small-norm elements
/// times unit powers. `None` when the bounds are exhausted.
pub fn lemma21_search(
    n: &RingElement,
    ctx: &RingContext,
    bounds: SearchBounds,
) -> Option<QuadrupleCertificate> {
    if n.is_zero() {
        return None;
    }
    let three_n = n.scale_i64(3);
    let target = ctx.norm(&three_n);
    let units = unit_powers(ctx, bounds.unit_power_bound);
    let factor_small = small_elements(ctx, bounds.factor_norm_bound, |norm| {
        target.is_multiple_of(&BigInt::from(norm))
    });
    let alphas = products(ctx, &factor_small, &units);
    let a_small = small_elements(ctx, bounds.a_norm_bound, |_| true);
    let a_cands = products(ctx, &a_small, &units);
    let mut attempts = 0i64;
    for (ja, alpha1) in &alphas {
        let Some(alpha2) = ctx.exact_div(&three_n, alpha1).ok().flatten() else {
            continue;
        };
        let Some(s) = (alpha1 + &alpha2).half() else {
            continue;
        };
        for (jb, a) in &a_cands {
            // r = (s - a)/2 must be integral.
            let diff = &s - a;
            if !(diff.x.is_even() && diff.y.is_even()) {
                continue;
            }
            attempts += 1;
            if let Some(cert) = try_pair(ctx, n, &three_n, alpha1, a) {
                return Some(cert.with_provenance(
                    Provenance::new("search")
                        .with("alpha1_x", alpha1.x.clone())
                        .with("alpha1_y", alpha1.y.clone())
                        .with("alpha1_unit_power", *ja)
                        .with("a_x", a.x.clone())
                        .with("a_y", a.y.clone())
                        .with("a_unit_power", *jb)
                        .with("attempts", attempts),
                ));
            }
        }
    }
    None
}
