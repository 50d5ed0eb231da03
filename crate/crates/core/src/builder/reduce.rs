use num_integer::Integer;

use super::support::{classify_support, SupportStatus};
use crate::ring::{RingContext, RingElement};

/// `n = w^2 n'` with `w = (0, 1)`, so `w^2 = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub w: RingElement,
    pub n_prime: RingElement,
    pub status: SupportStatus,
}

/// Divides `n` by `d` when `d` divides both components.
pub fn reduce_by_d(n: &RingElement, ctx: &RingContext) -> Option<Reduction> {
    if n.is_zero() {
        return None;
    }
    let d = ctx.d_big();
    if !(n.x.is_multiple_of(d) && n.y.is_multiple_of(d)) {
        return None;
    }
    let n_prime = n.div_integer(d)?;
    let status = classify_support(&n_prime, ctx).ok()?;
    Some(Reduction {
        w: RingElement::new(0, 1),
        n_prime,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::SupportTag;

    fn e(x: i64, y: i64) -> RingElement {
        RingElement::new(x, y)
    }

    #[test]
    fn examples() {
        let ctx = RingContext::new(10).unwrap();
        let red = reduce_by_d(&e(20, 60), &ctx).unwrap();
        assert_eq!(red.n_prime, e(2, 6));
        assert_eq!(red.status.tag, SupportTag::DelegatedPriorWork);
        assert_eq!(ctx.square(&red.w), e(10, 0));
        assert!(reduce_by_d(&e(8, 0), &ctx).is_none());
        let red = reduce_by_d(&e(10, 10), &ctx).unwrap();
        assert_eq!(red.n_prime, e(1, 1));
        assert_eq!(red.status.tag, SupportTag::ExcludedS);
    }
}
