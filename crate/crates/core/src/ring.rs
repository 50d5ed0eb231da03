//! Exact arithmetic in `Z[sqrt(d)]` for square-free `d = 2 (mod 4)`.
//!
//! Elements are bare coordinate pairs `(x, y) = x + y*sqrt(d)`; every
//! operation that depends on `d` (products, norms, division, square roots)
//! goes through a [`RingContext`], so elements of different rings are never
//! combined by accident.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element `x + y*sqrt(d)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    pub x: BigInt,
    pub y: BigInt,
}

impl RingElement {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The rational integer `k`, i.e. `(k, 0)`.
    pub fn integer(k: impl Into<BigInt>) -> Self {
        Self::new(k, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    /// Multiplies both components by the rational integer `k`.
    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            x: &self.x * k,
            y: &self.y * k,
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    /// Componentwise exact division by a rational integer, `None` when
    /// either component leaves a remainder.
    pub fn div_integer(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let (qx, rx) = self.x.div_rem(k);
        let (qy, ry) = self.y.div_rem(k);
        (rx.is_zero() && ry.is_zero()).then_some(Self { x: qx, y: qy })
    }

    pub fn half(&self) -> Option<Self> {
        self.div_integer(&BigInt::from(2))
    }

    /// `(x mod 4, y mod 4)` with non-negative residues.
    pub fn mod4_pattern(&self) -> (u8, u8) {
        (residue_u8(&self.x, 4), residue_u8(&self.y, 4))
    }

    /// The four sign variants `(±x, ±y)`, deduplicated, in the order
    /// `(x, y), (x, -y), (-x, y), (-x, -y)`.
    pub fn sign_variants(&self) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::with_capacity(4);
        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let v = Self {
                x: if sx < 0 { -&self.x } else { self.x.clone() },
                y: if sy < 0 { -&self.y } else { self.y.clone() },
            };
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Canonical sign for square roots: `x > 0`, or `x = 0` and `y >= 0`.
    pub fn canonical_sign(self) -> Self {
        if self.x.is_negative() || (self.x.is_zero() && self.y.is_negative()) {
            -self
        } else {
            self
        }
    }
}

pub(crate) fn residue_u8(v: &BigInt, m: u8) -> u8 {
    let r = v.mod_floor(&BigInt::from(m));
    r.try_into().expect("residue fits in u8")
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl FromStr for RingElement {
    type Err = String;

    /// Parses `"x,y"` (whitespace and surrounding parentheses allowed).
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (x, y) = body
            .split_once(',')
            .ok_or_else(|| format!("expected \"x,y\", got {s:?}"))?;
        let x = x
            .trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad x component {x:?}: {e}"))?;
        let y = y
            .trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad y component {y:?}: {e}"))?;
        Ok(Self { x, y })
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(deserializer)?;
        let x = x.parse::<BigInt>().map_err(de::Error::custom)?;
        let y = y.parse::<BigInt>().map_err(de::Error::custom)?;
        Ok(Self { x, y })
    }
}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn add(self, rhs: &'a RingElement) -> RingElement {
        RingElement {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        RingElement {
            x: self.x + rhs.x,
            y: self.y + rhs.y,
        }
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &'a RingElement) -> RingElement {
        RingElement {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        RingElement {
            x: self.x - rhs.x,
            y: self.y - rhs.y,
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            x: -self.x,
            y: -self.y,
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

/// The ring `Z[sqrt(d)]`, validated once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    d: u64,
    d_big: BigInt,
}

impl RingContext {
    /// Accepts square-free `d > 0` with `d = 2 (mod 4)`.
    pub fn new(d: u64) -> Result<Self> {
        if d % 4 != 2 || !is_square_free(d) {
            return Err(Error::InvalidModulus(d));
        }
        Ok(Self {
            d,
            d_big: BigInt::from(d),
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn d_big(&self) -> &BigInt {
        &self.d_big
    }

    /// `(x1 + y1 sqrt d)(x2 + y2 sqrt d) = (x1 x2 + d y1 y2) + (x1 y2 + x2 y1) sqrt d`
    pub fn mul(&self, u: &RingElement, v: &RingElement) -> RingElement {
        RingElement {
            x: &u.x * &v.x + &self.d_big * &u.y * &v.y,
            y: &u.x * &v.y + &u.y * &v.x,
        }
    }

    pub fn square(&self, u: &RingElement) -> RingElement {
        RingElement {
            x: &u.x * &u.x + &self.d_big * &u.y * &u.y,
            y: BigInt::from(2) * &u.x * &u.y,
        }
    }

    pub fn pow(&self, u: &RingElement, mut exp: u32) -> RingElement {
        let mut base = u.clone();
        let mut acc = RingElement::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// `x^2 - d y^2`
    pub fn norm(&self, u: &RingElement) -> BigInt {
        &u.x * &u.x - &self.d_big * &u.y * &u.y
    }

    /// The quotient `q` with `q * v = u`, or `None` when it is not integral.
    pub fn exact_div(&self, u: &RingElement, v: &RingElement) -> Result<Option<RingElement>> {
        if v.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let nv = self.norm(v);
        let q = match self.mul(u, &v.conj()).div_integer(&nv) {
            Some(q) => q,
            None => return Ok(None),
        };
        Ok((self.mul(&q, v) == *u).then_some(q))
    }

    /// A square root of `z` with canonical sign, if one exists.
    ///
    /// A root `(p, q)` satisfies `p^2 + d q^2 = z.x`, `2pq = z.y` and
    /// `p^2 - d q^2 = ±t` where `t^2 = Nm(z)`, so both `p^2` and `d q^2` are
    /// read off from `(z.x ± t) / 2`.
    pub fn is_square(&self, z: &RingElement) -> Option<RingElement> {
        if z.is_zero() {
            return Some(RingElement::zero());
        }
        if z.y.is_odd() || z.x.is_negative() {
            return None;
        }
        let norm = self.norm(z);
        if norm.is_negative() {
            return None;
        }
        let t = norm.sqrt();
        if &t * &t != norm {
            return None;
        }
        let two = BigInt::from(2);
        let half_y = &z.y / &two;
        for (p2, dq2) in [(&z.x + &t, &z.x - &t), (&z.x - &t, &z.x + &t)] {
            let (p2, dq2) = (p2 / &two, dq2 / &two);
            let (q2, rem) = dq2.div_rem(&self.d_big);
            if !rem.is_zero() {
                continue;
            }
            let (Some(p), Some(q)) = (exact_sqrt(&p2), exact_sqrt(&q2)) else {
                continue;
            };
            let q = if p.is_zero() {
                if !half_y.is_zero() {
                    continue;
                }
                q
            } else if (&p * &q) == half_y {
                q
            } else if (&p * &q) == -&half_y {
                -q
            } else {
                continue;
            };
            let root = RingElement { x: p, y: q };
            debug_assert_eq!(self.square(&root), *z);
            return Some(root);
        }
        None
    }

    /// Renders `u` as `x+y*sqrt(d)`.
    pub fn render(&self, u: &RingElement) -> String {
        if u.y.is_negative() {
            format!("{}-{}*sqrt({})", u.x, -&u.y, self.d)
        } else {
            format!("{}+{}*sqrt({})", u.x, u.y, self.d)
        }
    }
}

fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let s = v.sqrt();
    (&s * &s == *v).then_some(s)
}

pub(crate) fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut rest = d;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// `x = a (mod c)` and `y = b (mod e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    a: i64,
    c: u64,
    b: i64,
    e: u64,
}

impl ResidueClass {
    /// Residues are reduced into `[0, c)` and `[0, e)`; moduli must be positive.
    pub fn new(a: i64, c: u64, b: i64, e: u64) -> Self {
        assert!(c > 0 && e > 0, "residue class moduli must be positive");
        Self {
            a: a.rem_euclid(c as i64),
            c,
            b: b.rem_euclid(e as i64),
            e,
        }
    }

    pub fn residues(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn moduli(&self) -> (u64, u64) {
        (self.c, self.e)
    }

    pub fn contains(&self, u: &RingElement) -> bool {
        u.x.mod_floor(&BigInt::from(self.c)) == BigInt::from(self.a)
            && u.y.mod_floor(&BigInt::from(self.e)) == BigInt::from(self.b)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) mod ({}, {})", self.a, self.b, self.c, self.e)
    }
}

pub fn congruent(u: &RingElement, cls: &ResidueClass) -> bool {
    cls.contains(u)
}

/// Membership in the two families partitioning the classes of `n` mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StClass {
    /// No D(n)-quadruple exists.
    S,
    T,
}

/// The nine `(x mod 4, y mod 4)` patterns of `S`.
pub const S_PATTERNS: [(u8, u8); 9] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 3),
    (2, 1),
    (2, 3),
    (3, 1),
    (3, 3),
];

/// The seven `(x mod 4, y mod 4)` patterns of `T`.
pub const T_PATTERNS: [(u8, u8); 7] = [(0, 0), (1, 0), (1, 2), (2, 0), (2, 2), (3, 0), (3, 2)];

pub fn classify_st(n: &RingElement) -> StClass {
    if S_PATTERNS.contains(&n.mod4_pattern()) {
        StClass::S
    } else {
        StClass::T
    }
}

impl RingElement {
    /// Convenience for tests and tables: both components as `i64` if they fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((
            i64::try_from(&self.x).ok()?,
            i64::try_from(&self.y).ok()?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(x: i64, y: i64) -> RingElement {
        RingElement::new(x, y)
    }

    fn ten() -> RingContext {
        RingContext::new(10).unwrap()
    }

    /// Square-root oracle by divisor enumeration of `z.y / 2`.
    fn is_square_by_divisors(ctx: &RingContext, z: &RingElement) -> Option<RingElement> {
        let (zx, zy) = z.to_i64_pair().unwrap();
        let d = ctx.d() as i64;
        let mut roots = Vec::new();
        if zy == 0 {
            if zx >= 0 {
                let p = (zx as f64).sqrt().round() as i64;
                for p in [p - 1, p, p + 1] {
                    if p >= 0 && p * p == zx {
                        roots.push((p, 0));
                    }
                }
                if zx % d == 0 {
                    let q2 = zx / d;
                    let q = (q2 as f64).sqrt().round() as i64;
                    for q in [q - 1, q, q + 1] {
                        if q >= 0 && q * q == q2 {
                            roots.push((0, q));
                        }
                    }
                }
            }
        } else if zy % 2 == 0 {
            let h = zy / 2;
            for p in 1..=h.abs() {
                if h % p == 0 {
                    for p in [p, -p] {
                        let q = h / p;
                        if p * p + d * q * q == zx {
                            roots.push((p, q));
                        }
                    }
                }
            }
        }
        roots
            .into_iter()
            .map(|(p, q)| e(p, q).canonical_sign())
            .min_by_key(|r| r.to_i64_pair())
    }

    #[test]
    fn multiplication_examples() {
        let ctx = ten();
        assert_eq!(ctx.mul(&e(3, 1), &e(3, 1)), e(19, 6));
        assert_eq!(ctx.mul(&e(19, 6), &e(1, 0)), e(19, 6));
        assert_eq!(ctx.mul(&e(19, 6), &e(0, 1)), e(60, 19));
        assert_eq!(ctx.pow(&e(19, 6), 2), e(721, 228));
        assert_eq!(ctx.pow(&e(19, 6), 0), RingElement::one());
    }

    #[test]
    fn conjugation_and_norm() {
        let ctx = ten();
        assert_eq!(e(4, 1).conj(), e(4, -1));
        assert_eq!(e(7, 0).conj(), e(7, 0));
        assert_eq!(e(-18, 6).conj(), e(-18, -6));
        assert_eq!(ctx.norm(&e(4, 1)), BigInt::from(6));
        assert_eq!(ctx.norm(&e(3, 1)), BigInt::from(-1));
        assert_eq!(ctx.norm(&e(19, 6)), BigInt::from(1));
    }

    #[test]
    fn exact_division() {
        let ctx = ten();
        assert_eq!(
            ctx.exact_div(&e(131, 42), &e(19, 6)).unwrap(),
            Some(e(-31, 12))
        );
        assert_eq!(
            ctx.exact_div(&e(19, 6), &e(19, 6)).unwrap(),
            Some(RingElement::one())
        );
        assert_eq!(ctx.exact_div(&e(1, 0), &e(0, 1)).unwrap(), None);
        assert_eq!(
            ctx.exact_div(&e(1, 0), &RingElement::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn congruence_classes() {
        assert!(congruent(&e(20, 12), &ResidueClass::new(20, 24, 12, 24)));
        assert!(congruent(&e(26, 6), &ResidueClass::new(2, 4, 2, 4)));
        assert!(!congruent(&e(-12, 0), &ResidueClass::new(20, 24, 12, 24)));
        assert!(congruent(&e(-1, -7), &ResidueClass::new(5, 6, 5, 6)));
        assert_eq!(ResidueClass::new(-1, 6, -7, 6).residues(), (5, 5));
    }

    #[test]
    fn st_classification() {
        assert_eq!(classify_st(&e(8, 0)), StClass::T);
        assert_eq!(classify_st(&e(1, 1)), StClass::S);
        assert_eq!(classify_st(&e(26, 6)), StClass::T);
        let mut s = 0;
        let mut t = 0;
        for x in 0..4 {
            for y in 0..4 {
                match classify_st(&e(x, y)) {
                    StClass::S => s += 1,
                    StClass::T => t += 1,
                }
            }
        }
        assert_eq!((s, t), (9, 7));
    }

    #[test]
    fn square_roots() {
        let ctx = ten();
        assert_eq!(ctx.is_square(&e(19, 6)), Some(e(3, 1)));
        assert_eq!(ctx.is_square(&e(360, 0)), Some(e(0, 6)));
        assert_eq!(ctx.is_square(&e(3, 1)), None);
        assert_eq!(ctx.is_square(&e(154, 48)), Some(e(8, 3)));
        assert_eq!(ctx.is_square(&e(7, 0)), None);
        assert_eq!(ctx.is_square(&e(19, -6)), Some(e(3, -1)));
        assert_eq!(ctx.is_square(&RingElement::zero()), Some(RingElement::zero()));
    }

    #[test]
    fn square_roots_match_divisor_oracle_on_a_box() {
        for d in [2u64, 10, 58] {
            let ctx = RingContext::new(d).unwrap();
            for x in -150..=150 {
                for y in -40..=40 {
                    let z = e(x, y);
                    assert_eq!(
                        ctx.is_square(&z),
                        is_square_by_divisors(&ctx, &z),
                        "d={d} z={z}"
                    );
                }
            }
        }
    }

    #[test]
    fn context_validation() {
        assert!(RingContext::new(10).is_ok());
        assert!(RingContext::new(2).is_ok());
        assert_eq!(RingContext::new(18), Err(Error::InvalidModulus(18)));
        assert_eq!(RingContext::new(12), Err(Error::InvalidModulus(12)));
        assert_eq!(RingContext::new(0), Err(Error::InvalidModulus(0)));
        assert_eq!(RingContext::new(50), Err(Error::InvalidModulus(50)));
    }

    #[test]
    fn rendering_and_parsing() {
        let ctx = ten();
        assert_eq!(ctx.render(&e(19, 6)), "19+6*sqrt(10)");
        assert_eq!(ctx.render(&e(19, -6)), "19-6*sqrt(10)");
        assert_eq!("-12,0".parse::<RingElement>().unwrap(), e(-12, 0));
        assert_eq!("(4, -1)".parse::<RingElement>().unwrap(), e(4, -1));
        assert!("4".parse::<RingElement>().is_err());
        let json = serde_json_like(&e(-31, 12));
        assert_eq!(json, r#"["-31","12"]"#);
    }

    fn serde_json_like(u: &RingElement) -> String {
        format!("[\"{}\",\"{}\"]", u.x, u.y)
    }

    fn element(range: i64) -> impl Strategy<Value = RingElement> {
        (-range..=range, -range..=range).prop_map(|(x, y)| e(x, y))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(u in element(1_000_000), v in element(1_000_000)) {
            let ctx = ten();
            prop_assert_eq!(ctx.norm(&ctx.mul(&u, &v)), ctx.norm(&u) * ctx.norm(&v));
        }

        #[test]
        fn conjugation_is_a_homomorphism(u in element(10_000), v in element(10_000)) {
            let ctx = ten();
            prop_assert_eq!(ctx.mul(&u, &v).conj(), ctx.mul(&u.conj(), &v.conj()));
            prop_assert_eq!(ctx.mul(&u, &u.conj()), RingElement::integer(ctx.norm(&u)));
        }

        #[test]
        fn exact_div_round_trips(u in element(10_000), v in element(50)) {
            prop_assume!(!v.is_zero());
            let ctx = ten();
            if let Some(q) = ctx.exact_div(&u, &v).unwrap() {
                prop_assert_eq!(ctx.mul(&q, &v), u.clone());
            }
            let w = ctx.mul(&u, &v);
            prop_assert_eq!(ctx.exact_div(&w, &v).unwrap(), Some(u));
        }

        #[test]
        fn is_square_round_trips(s in element(1_000_000)) {
            let ctx = ten();
            let s = s.canonical_sign();
            prop_assert_eq!(ctx.is_square(&ctx.square(&s)), Some(s));
        }

        #[test]
        fn is_square_is_sound(z in element(100_000)) {
            let ctx = RingContext::new(58).unwrap();
            if let Some(s) = ctx.is_square(&z) {
                prop_assert_eq!(ctx.square(&s), z);
            }
        }
    }
}
