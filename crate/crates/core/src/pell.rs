//! Continued fractions of `sqrt(d)` and the norm equations `x^2 - d y^2 = N`
//! for `N` in `{1, -1, 6, -6}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{is_square_free, RingContext, RingElement};

/// A solution of `x^2 - d y^2 = target_norm`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub value: RingElement,
    pub target_norm: i64,
}

/// Periodic continued fraction `sqrt(d) = [a0; period...]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfExpansion {
    pub a0: u64,
    pub period: Vec<u64>,
}

impl CfExpansion {
    pub fn period_length(&self) -> usize {
        self.period.len()
    }

    /// Partial quotient `a_k` for `k >= 0`.
    pub fn term(&self, k: usize) -> u64 {
        if k == 0 {
            self.a0
        } else {
            self.period[(k - 1) % self.period.len()]
        }
    }

    /// Convergents `(p_k, q_k)` for `k = 0..count`.
    pub fn convergents(&self, count: usize) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(count);
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p, mut q) = (BigInt::from(self.a0), BigInt::one());
        for k in 0..count {
            if k > 0 {
                let a = BigInt::from(self.term(k));
                let p_next = &a * &p + &p_prev;
                let q_next = &a * &q + &q_prev;
                p_prev = std::mem::replace(&mut p, p_next);
                q_prev = std::mem::replace(&mut q, q_next);
            }
            out.push((p.clone(), q.clone()));
        }
        out
    }
}

/// The `(P, Q)` recurrence; the period closes at the first term equal to `2 a0`.
pub fn cf_expand(ctx: &RingContext) -> CfExpansion {
    let d = ctx.d();
    let a0 = d.sqrt();
    let (mut p, mut q, mut a) = (0u64, 1u64, a0);
    let mut period = Vec::new();
    loop {
        p = a * q - p;
        q = (d - p * p) / q;
        a = (a0 + p) / q;
        period.push(a);
        if a == 2 * a0 {
            break;
        }
    }
    CfExpansion { a0, period }
}

fn convergent_element(cf: &CfExpansion, k: usize) -> RingElement {
    let (p, q) = cf.convergents(k + 1).pop().expect("at least one convergent");
    RingElement { x: p, y: q }
}

/// Minimal `(x, y)` with `x, y > 0` and `x^2 - d y^2 = 1`.
pub fn fundamental_unit(ctx: &RingContext) -> PellSolution {
    let cf = cf_expand(ctx);
    let l = cf.period_length();
    let k = if l % 2 == 1 { 2 * l - 1 } else { l - 1 };
    let value = convergent_element(&cf, k);
    debug_assert!(ctx.norm(&value).is_one());
    PellSolution {
        value,
        target_norm: 1,
    }
}

/// Minimal positive solution of `x^2 - d y^2 = -1`, present iff the period is odd.
pub fn fundamental_neg(ctx: &RingContext) -> Option<PellSolution> {
    let cf = cf_expand(ctx);
    let l = cf.period_length();
    if l % 2 == 0 {
        return None;
    }
    let value = convergent_element(&cf, l - 1);
    debug_assert_eq!(ctx.norm(&value), BigInt::from(-1));
    Some(PellSolution {
        value,
        target_norm: -1,
    })
}

/// `floor(sqrt(|N| (x1 + 1) / (2d))) + 1`, the bound on `|y|` for class representatives.
pub fn representative_bound(ctx: &RingContext, target: i64) -> BigInt {
    let unit = fundamental_unit(ctx).value;
    let num = BigInt::from(target.unsigned_abs()) * (unit.x + 1u32);
    (num / (BigInt::from(2u32) * ctx.d_big())).sqrt() + 1u32
}

/// Representatives `(x, ±y)`, `x >= 0`, `0 <= y <= bound` of norm `target`,
/// sorted by `|y|`, then `x`, then `+y` before `-y`.
///
/// A solution with `gcd(x, y) = g` is `g` times a primitive solution of
/// `target / g^2`, and when `|target / g^2| < sqrt(d)` the primitive positive
/// solutions are convergents of `sqrt(d)`. If every `g` qualifies, two periods
/// of convergents replace the scan over `y`.
pub fn representatives(ctx: &RingContext, target: i64) -> Vec<RingElement> {
    if target == 0 {
        return Vec::new();
    }
    let bound = representative_bound(ctx, target);
    let target_big = BigInt::from(target);
    let mut found: BTreeSet<(BigInt, BigInt, i8)> = BTreeSet::new();
    let mut keep = |x: BigInt, y: BigInt| {
        if y.is_zero() {
            found.insert((y, x, 0));
        } else {
            found.insert((y.clone(), x.clone(), 0));
            found.insert((y, x, 1));
        }
    };
    let abs = target.unsigned_abs();
    let scales: Vec<u64> = (1..)
        .take_while(|g: &u64| g * g <= abs)
        .filter(|g| abs % (g * g) == 0)
        .collect();
    let by_convergents = scales
        .iter()
        .all(|g| u128::from(abs / (g * g)).pow(2) < u128::from(ctx.d()));
    if by_convergents {
        let cf = cf_expand(ctx);
        let convergents = cf.convergents(2 * cf.period_length());
        for &g in &scales {
            let g_big = BigInt::from(g);
            let reduced = BigInt::from(target / (g * g) as i64);
            if reduced.is_one() {
                keep(g_big.clone(), BigInt::zero());
            }
            for (p, q) in &convergents {
                let (x, y) = (p * &g_big, q * &g_big);
                if y > bound {
                    break;
                }
                if ctx.norm(&RingElement { x: p.clone(), y: q.clone() }) == reduced {
                    keep(x, y);
                }
            }
        }
        debug_assert!(found.iter().all(|(y, x, _)| {
            ctx.norm(&RingElement { x: x.clone(), y: y.clone() }) == target_big
        }));
    } else {
        let mut y = BigInt::zero();
        while y <= bound {
            let t = &target_big + ctx.d_big() * &y * &y;
            if !t.is_negative() {
                let x = t.sqrt();
                if &x * &x == t {
                    keep(x, y.clone());
                }
            }
            y += 1u32;
        }
    }
    found
        .into_iter()
        .map(|(y, x, s)| RingElement {
            x,
            y: if s == 1 { -y } else { y },
        })
        .collect()
}

/// Representatives of norm `+6` or `-6` within the classical bound.
pub fn solve_norm6(ctx: &RingContext, sign: i8) -> Vec<PellSolution> {
    let target = if sign < 0 { -6 } else { 6 };
    representatives(ctx, target)
        .into_iter()
        .map(|value| PellSolution {
            value,
            target_norm: target,
        })
        .collect()
}

fn quadrant(u: RingElement) -> RingElement {
    RingElement {
        x: u.x.abs(),
        y: u.y.abs(),
    }
}

/// The first `count` elements `(x, y)`, `x, y >= 0`, of norm `target`,
/// ordered by `y` then `x`. Each one stands for its sign variants `(±x, ±y)`.
pub fn enumerate_norm_class(
    ctx: &RingContext,
    target: i64,
    count: usize,
) -> Result<Vec<RingElement>> {
    let reps = representatives(ctx, target);
    if reps.is_empty() {
        return Err(Error::EmptyNormClass {
            d: ctx.d(),
            target,
        });
    }
    let unit = fundamental_unit(ctx).value;
    let mut seen: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    for rep in reps.iter().flat_map(|r| [r.clone(), r.conj()]) {
        let mut cur = rep;
        for _ in 0..count + 2 {
            let q = quadrant(cur.clone());
            seen.insert((q.y, q.x));
            cur = ctx.mul(&cur, &unit);
        }
    }
    Ok(seen
        .into_iter()
        .take(count)
        .map(|(y, x)| RingElement { x, y })
        .collect())
}

/// The component patterns elements of norm `±1`, `±6` take for admissible `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaForm {
    /// Norm 1: `(6a1 ± 1, 6b1)`.
    FormI,
    /// Norm -1: `(6a1 + 3, 6b1 ± 1)`.
    FormII,
    /// Norm 6: `(12M ± 4, 6N ± 1)`.
    FormIV,
    /// Norm -6: `(12M ± 2, 6N ± 1)`.
    FormV,
}

/// `x = modulus_x * p + off_x`, `y = modulus_y * q + off_y` with the chosen offsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatch {
    pub form: LemmaForm,
    /// `a1` or `M`.
    pub p: BigInt,
    /// `b1` or `N`.
    pub q: BigInt,
    pub off_x: i64,
    pub off_y: i64,
}

fn split(v: &BigInt, modulus: i64, offsets: &[i64]) -> Option<(BigInt, i64)> {
    offsets.iter().find_map(|&o| {
        let (q, r) = (v - o).div_rem(&BigInt::from(modulus));
        r.is_zero().then_some((q, o))
    })
}

/// Matches `u` against its norm's form. `Ok(None)` for norms outside
/// `{±1, ±6}`; `Err(FormViolation)` when the norm fits but the pattern does not.
pub fn classify_form(ctx: &RingContext, u: &RingElement) -> Result<Option<FormMatch>> {
    let norm = ctx.norm(u);
    let norm = match i64::try_from(&norm) {
        Ok(v) if [1, -1, 6, -6].contains(&v) => v,
        _ => return Ok(None),
    };
    let (form, mx, ox, my, oy): (LemmaForm, i64, &[i64], i64, &[i64]) = match norm {
        1 => (LemmaForm::FormI, 6, &[1, -1], 6, &[0]),
        -1 => (LemmaForm::FormII, 6, &[3], 6, &[1, -1]),
        6 => (LemmaForm::FormIV, 12, &[4, -4], 6, &[1, -1]),
        _ => (LemmaForm::FormV, 12, &[2, -2], 6, &[1, -1]),
    };
    match (split(&u.x, mx, ox), split(&u.y, my, oy)) {
        (Some((p, off_x)), Some((q, off_y))) => Ok(Some(FormMatch {
            form,
            p,
            q,
            off_x,
            off_y,
        })),
        _ => Err(Error::FormViolation {
            element: u.to_string(),
            norm,
        }),
    }
}

/// Both `x^2 - d y^2 = -1` (odd period) and `x^2 - d y^2 = 6` are solvable.
pub fn is_admissible(ctx: &RingContext) -> bool {
    cf_expand(ctx).period_length() % 2 == 1 && !solve_norm6(ctx, 1).is_empty()
}

/// Square-free `d = 2 (mod 4)` up to `limit` that are admissible, ascending.
pub fn admissible_d_scan(limit: u64) -> Vec<u64> {
    let candidates: Vec<u64> = (2..=limit)
        .step_by(4)
        .filter(|&d| is_square_free(d))
        .collect();
    candidates
        .into_par_iter()
        .filter(|&d| is_admissible(&RingContext::new(d).expect("candidate is valid")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: i64, y: i64) -> RingElement {
        RingElement::new(x, y)
    }

    fn ctx(d: u64) -> RingContext {
        RingContext::new(d).unwrap()
    }

    /// Brute-force minimal positive solution of `x^2 - d y^2 = target`.
    fn scan_min(d: i64, target: i64, ymax: i64) -> Option<(i64, i64)> {
        (1..=ymax).find_map(|y| {
            let t = target + d * y * y;
            if t < 0 {
                return None;
            }
            let x = (t as f64).sqrt().round() as i64;
            (x * x == t).then_some((x, y))
        })
    }

    #[test]
    fn cf_examples() {
        let cf = cf_expand(&ctx(10));
        assert_eq!((cf.a0, cf.period.clone()), (3, vec![6]));
        let cf = cf_expand(&ctx(2));
        assert_eq!((cf.a0, cf.period.clone()), (1, vec![2]));
        assert_eq!(cf_expand(&ctx(58)).period_length() % 2, 1);
        assert_eq!(cf_expand(&ctx(34)).period_length() % 2, 0);
        for d in [6u64, 14, 22, 94, 106, 58] {
            let cf = cf_expand(&ctx(d));
            assert_eq!(*cf.period.last().unwrap(), 2 * cf.a0);
        }
    }

    #[test]
    fn fundamentals() {
        assert_eq!(fundamental_unit(&ctx(10)).value, e(19, 6));
        assert_eq!(fundamental_unit(&ctx(2)).value, e(3, 2));
        assert_eq!(fundamental_neg(&ctx(10)).unwrap().value, e(3, 1));
        assert_eq!(fundamental_neg(&ctx(58)).unwrap().value, e(99, 13));
        assert!(fundamental_neg(&ctx(34)).is_none());
        let c = ctx(58);
        let neg = fundamental_neg(&c).unwrap().value;
        assert_eq!(c.square(&neg), fundamental_unit(&c).value);
    }

    #[test]
    fn fundamentals_are_minimal_by_scan() {
        for d in [2u64, 6, 10, 14, 22, 26, 30, 34, 38, 42, 58, 74] {
            let c = ctx(d);
            let u = fundamental_unit(&c).value.to_i64_pair().unwrap();
            assert_eq!(scan_min(d as i64, 1, u.1), Some(u), "d={d}");
            let neg = fundamental_neg(&c).map(|s| s.value.to_i64_pair().unwrap());
            assert_eq!(scan_min(d as i64, -1, u.1), neg, "d={d}");
        }
    }

    #[test]
    fn norm6_examples() {
        let c = ctx(10);
        let plus: Vec<_> = solve_norm6(&c, 1).into_iter().map(|s| s.value).collect();
        let minus: Vec<_> = solve_norm6(&c, -1).into_iter().map(|s| s.value).collect();
        assert!(plus.contains(&e(4, 1)));
        assert!(minus.contains(&e(2, 1)));
        for s in solve_norm6(&c, 1).iter().chain(solve_norm6(&c, -1).iter()) {
            assert_eq!(c.norm(&s.value), BigInt::from(s.target_norm));
        }
    }

    #[test]
    fn convergent_route_matches_scan() {
        // Both routes are valid once |N| < sqrt(d); compare them directly.
        fn scanned(c: &RingContext, target: i64) -> Vec<RingElement> {
            let bound = representative_bound(c, target);
            let mut out = Vec::new();
            let mut y = BigInt::zero();
            while y <= bound {
                let t = BigInt::from(target) + c.d_big() * &y * &y;
                if !t.is_negative() {
                    let x = t.sqrt();
                    if &x * &x == t {
                        out.push(RingElement { x: x.clone(), y: y.clone() });
                        if !y.is_zero() {
                            out.push(RingElement { x, y: -&y });
                        }
                    }
                }
                y += 1u32;
            }
            out
        }
        for d in [38u64, 58, 74, 106, 122, 154, 178, 202] {
            let c = ctx(d);
            if fundamental_unit(&c).value.y > BigInt::from(2_000_000u32) {
                continue;
            }
            for target in [1, -1, 6, -6] {
                assert_eq!(representatives(&c, target), scanned(&c, target), "d={d} N={target}");
            }
        }
    }

    #[test]
    fn class_enumeration_examples() {
        let c = ctx(10);
        assert_eq!(
            enumerate_norm_class(&c, 1, 3).unwrap(),
            vec![e(1, 0), e(19, 6), e(721, 228)]
        );
        assert_eq!(
            enumerate_norm_class(&c, -1, 2).unwrap(),
            vec![e(3, 1), e(117, 37)]
        );
        assert_eq!(
            enumerate_norm_class(&c, 6, 2).unwrap(),
            vec![e(4, 1), e(16, 5)]
        );
        assert_eq!(c.mul(&e(4, -1), &e(19, 6)), e(16, 5));
        assert_eq!(c.mul(&e(4, 1), &e(19, 6)), e(136, 43));
        assert!(matches!(
            enumerate_norm_class(&ctx(34), -1, 3),
            Err(Error::EmptyNormClass { d: 34, target: -1 })
        ));
    }

    #[test]
    fn norm6_orbits_are_complete_for_d10() {
        let c = ctx(10);
        for target in [6i64, -6] {
            let class: BTreeSet<_> = enumerate_norm_class(&c, target, 40)
                .unwrap()
                .into_iter()
                .filter(|u| u.y <= BigInt::from(10_000))
                .collect();
            let mut brute = BTreeSet::new();
            for y in 0..=10_000i64 {
                let t = target + 10 * y * y;
                if t < 0 {
                    continue;
                }
                let x = (t as f64).sqrt().round() as i64;
                for x in [x - 1, x, x + 1] {
                    if x >= 0 && x * x == t {
                        brute.insert(e(x, y));
                    }
                }
            }
            assert_eq!(class, brute, "N={target}");
        }
    }

    #[test]
    fn form_examples() {
        let c = ctx(10);
        let m = classify_form(&c, &e(19, 6)).unwrap().unwrap();
        assert_eq!((m.form, m.p, m.q), (LemmaForm::FormI, 3.into(), 1.into()));
        let m = classify_form(&c, &e(3, 1)).unwrap().unwrap();
        assert_eq!(m.form, LemmaForm::FormII);
        let m = classify_form(&c, &e(4, 1)).unwrap().unwrap();
        assert_eq!((m.form, m.p, m.q), (LemmaForm::FormIV, 0.into(), 0.into()));
        assert_eq!(classify_form(&c, &e(2, 1)).unwrap().unwrap().form, LemmaForm::FormV);
        assert_eq!(classify_form(&c, &e(5, 1)).unwrap(), None);
        // 2 has norm 4 in Z, but (2, 0) is outside the lemma's norms.
        assert_eq!(classify_form(&c, &e(2, 0)).unwrap(), None);
        // d = 34 is not admissible: (35, 6) has norm 1 but y is not 0 mod 6.
        assert!(matches!(
            classify_form(&ctx(34), &e(35, 6)),
            Ok(Some(_))
        ));
        assert!(matches!(
            classify_form(&ctx(2), &e(3, 2)),
            Err(Error::FormViolation { norm: 1, .. })
        ));
    }

    #[test]
    fn admissible_scan_examples() {
        assert_eq!(admissible_d_scan(10), vec![10]);
        assert!(admissible_d_scan(58).contains(&58));
        assert!(admissible_d_scan(9).is_empty());
        for d in admissible_d_scan(1000) {
            assert_eq!(d % 48, 10, "d={d}");
        }
    }
}
