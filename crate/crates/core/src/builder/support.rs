use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::examples::{exceptional_family, ExceptionalFamily};
use super::reduce::reduce_by_d;
use crate::error::{Error, Result};
use crate::pell::is_admissible;
use crate::ring::{classify_st, RingContext, RingElement, StClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SupportTag {
    ConstructibleHere,
    DelegatedPriorWork,
    ExcludedS,
    OpenS0,
    ExcludedResidue,
    Unknown,
}

impl SupportTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            SupportTag::ConstructibleHere => "ConstructibleHere",
            SupportTag::DelegatedPriorWork => "DelegatedPriorWork",
            SupportTag::ExcludedS => "ExcludedS",
            SupportTag::OpenS0 => "OpenS0",
            SupportTag::ExcludedResidue => "ExcludedResidue",
            SupportTag::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for SupportTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportStatus {
    pub tag: SupportTag,
    pub detail: String,
}

impl SupportStatus {
    pub fn new(tag: SupportTag, detail: impl Into<String>) -> Self {
        Self {
            tag,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for SupportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.tag, self.detail)
    }
}

fn modi(v: &BigInt, m: i64) -> i64 {
    i64::try_from(v.mod_floor(&BigInt::from(m))).expect("small residue")
}

/// Theorem-level classification of `n`.
///
/// The residue exclusions of the two theorems come back as `ExcludedResidue`;
/// [`classify_exceptional`] refines them with the d = 10 examples, the
/// reduction by `d`, and the open set.
pub fn classify_support(n: &RingElement, ctx: &RingContext) -> Result<SupportStatus> {
    use SupportTag::*;
    if n.is_zero() {
        return Err(Error::ZeroArgument("n"));
    }
    let (px, py) = n.mod4_pattern();
    if classify_st(n) == StClass::S {
        return Ok(SupportStatus::new(
            ExcludedS,
            format!("n in S: (x, y) = ({px}, {py}) mod 4"),
        ));
    }
    match (px, py) {
        (0, 0) => {
            let (m, k) = (&n.x / 4, &n.y / 4);
            let (m6, k6) = (modi(&m, 6), modi(&k, 6));
            if (m6, k6) == (5, 3) {
                return Ok(SupportStatus::new(
                    ExcludedResidue,
                    "n = (4m, 4k) with (m, k) = (5, 3) mod (6, 6)",
                ));
            }
            if m6 % 2 == 1 && k6 % 2 == 0 {
                let (m1, k1) = ((&m - 1) / 2, &k / 2);
                if modi(&m1, 2) == 0 && modi(&k1, 2) == 1 {
                    return Ok(SupportStatus::new(
                        DelegatedPriorWork,
                        "thm12.caseII: m1 even, k1 odd (scaled prior-work class)",
                    ));
                }
            }
            if !is_admissible(ctx) {
                return Ok(SupportStatus::new(Unknown, "d is not admissible"));
            }
            Ok(SupportStatus::new(ConstructibleHere, thm12_label(m6, k6)))
        }
        (2, 0) => {
            let (m, k) = ((&n.x - 2) / 4, &n.y / 4);
            let (m12, k6) = (modi(&m, 12), modi(&k, 6));
            if (m12, k6) == (9, 3) || (m12, k6) == (0, 0) {
                return Ok(SupportStatus::new(
                    ExcludedResidue,
                    format!("n = (4m + 2, 4k) with (m, k) = ({m12}, {k6}) mod (12, 6)"),
                ));
            }
            if !is_admissible(ctx) {
                return Ok(SupportStatus::new(Unknown, "d is not admissible"));
            }
            Ok(SupportStatus::new(ConstructibleHere, thm13_label(m12, k6)))
        }
        _ => Ok(SupportStatus::new(
            DelegatedPriorWork,
            format!("prior-work class: (x, y) = ({px}, {py}) mod 4"),
        )),
    }
}

fn thm12_label(m: i64, k: i64) -> &'static str {
    match (m % 2, k % 2) {
        (0, 0) => "thm12.caseI",
        (1, 0) => "thm12.caseII",
        (0, _) => "thm12.caseIII",
        _ => "thm12.caseIV",
    }
}

fn thm13_label(m: i64, k: i64) -> &'static str {
    match (m % 4, k % 2) {
        (2, 0) => "thm13.caseI.m2mod4",
        (0, 0) => "thm13.caseI.m0mod4",
        (_, 0) => "thm13.caseIII",
        (0 | 2, _) => "thm13.caseII",
        (3, _) => "thm13.caseIV.m3mod4",
        _ => "thm13.caseIV.m1mod4",
    }
}

/// Refines `ExcludedResidue` into the routes that still reach a quadruple:
/// reduction by `d` when `d` divides `n`, the d = 10 examples, and `OpenS0`
/// for the d = 10 cells nothing here covers.
pub fn classify_exceptional(n: &RingElement, ctx: &RingContext) -> Result<SupportStatus> {
    use SupportTag::*;
    let base = classify_support(n, ctx)?;
    if base.tag != ExcludedResidue {
        return Ok(base);
    }
    if let Some(red) = reduce_by_d(n, ctx) {
        if red.status.tag != ExcludedS {
            return Ok(SupportStatus::new(
                ConstructibleHere,
                format!("reduce: n / {} = {} is {}", ctx.d(), red.n_prime, red.status.tag),
            ));
        }
    }
    if ctx.d() != 10 {
        return Ok(base);
    }
    let Some((family, m, k)) = exceptional_family(n) else {
        return Ok(base);
    };
    let (m5, k5) = (modi(&m, 5), modi(&k, 5));
    let example = match family {
        ExceptionalFamily::E1 => [2, 3].contains(&m5).then_some("ex3"),
        ExceptionalFamily::E2 => [0, 4].contains(&m5).then_some("ex3"),
        ExceptionalFamily::E3 => [1, 2].contains(&m5).then_some("ex4"),
        ExceptionalFamily::E4 => [3, 4].contains(&m5).then_some("ex4"),
    };
    Ok(match example {
        Some(tag) => SupportStatus::new(
            ConstructibleHere,
            format!("{tag}: {} with (m, k) = ({m5}, {k5}) mod (5, 5)", family.label()),
        ),
        None => SupportStatus::new(
            OpenS0,
            format!(
                "{} with (m, k) = ({m5}, {k5}) mod (5, 5)",
                family.open_set_label()
            ),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: i64, y: i64) -> RingElement {
        RingElement::new(x, y)
    }

    fn tag(n: RingElement) -> SupportTag {
        classify_support(&n, &RingContext::new(10).unwrap()).unwrap().tag
    }

    fn etag(n: RingElement) -> SupportTag {
        classify_exceptional(&n, &RingContext::new(10).unwrap()).unwrap().tag
    }

    #[test]
    fn examples() {
        assert_eq!(tag(e(20, 12)), SupportTag::ExcludedResidue);
        assert_eq!(tag(e(1, 1)), SupportTag::ExcludedS);
        assert_eq!(tag(e(26, 6)), SupportTag::DelegatedPriorWork);
        assert_eq!(tag(e(8, 0)), SupportTag::ConstructibleHere);
        assert_eq!(tag(e(38, 12)), SupportTag::ExcludedResidue);
        assert_eq!(tag(e(2, 0)), SupportTag::ExcludedResidue);
        assert_eq!(tag(e(10, 0)), SupportTag::ConstructibleHere);
        // m = 1, k = 2: m1 = 0 even, k1 = 1 odd.
        assert_eq!(tag(e(4, 8)), SupportTag::DelegatedPriorWork);
        assert!(classify_support(&RingElement::zero(), &RingContext::new(10).unwrap()).is_err());
    }

    #[test]
    fn partition_of_mod4_classes() {
        for x in -40..40 {
            for y in -40..40 {
                if x == 0 && y == 0 {
                    continue;
                }
                let n = e(x, y);
                let t = tag(n.clone());
                assert_eq!(
                    t == SupportTag::ExcludedS,
                    classify_st(&n) == StClass::S,
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn non_admissible_d_is_unknown() {
        let ctx = RingContext::new(34).unwrap();
        assert_eq!(
            classify_support(&e(8, 0), &ctx).unwrap().tag,
            SupportTag::Unknown
        );
    }

    #[test]
    fn exceptional_refinement() {
        // 4(5, 3): S1 with (m, k) = (0, 0).
        assert_eq!(etag(e(20, 12)), SupportTag::OpenS0);
        // First family, m = 2.
        assert_eq!(etag(e(116, 12)), SupportTag::ConstructibleHere);
        // Third family, m = 1.
        assert_eq!(etag(e(86, 12)), SupportTag::ConstructibleHere);
        // 4(5, 15) = 10 (2, 6): reduction.
        assert_eq!(etag(e(20, 60)), SupportTag::ConstructibleHere);
        assert_eq!(etag(e(2, 0)), SupportTag::OpenS0);
        assert_eq!(etag(e(8, 0)), SupportTag::ConstructibleHere);
    }
}
