//! Ground truth for the constructors: direct verification of the definition
//! and exhaustive search in a box. Only ring arithmetic is used here.

use std::fmt;

use crate::builder::{Provenance, QuadrupleCertificate, PAIRS, PAIR_LABELS};
use crate::ring::{RingContext, RingElement};

mod graph;

pub use graph::{brute_force_search, PairGraph};

/// Why four elements are not a D(n)-quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    Zero(usize),
    NotDistinct(usize, usize),
    /// `e_i e_j + n` is not a square; indices are 0-based.
    NotSquare(usize, usize),
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::Zero(i) => write!(f, "element {} is zero", i + 1),
            VerifyFailure::NotDistinct(i, j) => {
                write!(f, "elements {} and {} are not distinct", i + 1, j + 1)
            }
            VerifyFailure::NotSquare(i, j) => write!(
                f,
                "pair {}: e{} * e{} + n is not a square",
                pair_label(*i, *j),
                i + 1,
                j + 1
            ),
        }
    }
}

fn pair_label(i: usize, j: usize) -> &'static str {
    PAIRS
        .iter()
        .position(|&p| p == (i, j))
        .map_or("??", |k| PAIR_LABELS[k])
}

/// Checks non-zeroness, distinctness and all six products; the certificate
/// carries the canonical roots.
pub fn verify_quadruple(
    elements: &[RingElement; 4],
    n: &RingElement,
    ctx: &RingContext,
) -> Result<QuadrupleCertificate, VerifyFailure> {
    if let Some(i) = elements.iter().position(RingElement::is_zero) {
        return Err(VerifyFailure::Zero(i));
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if elements[i] == elements[j] {
                return Err(VerifyFailure::NotDistinct(i, j));
            }
        }
    }
    let mut witnesses = Vec::with_capacity(6);
    for &(i, j) in &PAIRS {
        let z = &ctx.mul(&elements[i], &elements[j]) + n;
        match ctx.is_square(&z) {
            Some(root) if ctx.square(&root) == z => witnesses.push(root),
            _ => return Err(VerifyFailure::NotSquare(i, j)),
        }
    }
    Ok(QuadrupleCertificate {
        d: ctx.d(),
        n: n.clone(),
        elements: elements.clone(),
        witnesses: witnesses.try_into().expect("six witnesses"),
        provenance: Provenance::new("verified"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(x: i64, y: i64) -> RingElement {
        RingElement::new(x, y)
    }

    fn ten() -> RingContext {
        RingContext::new(10).unwrap()
    }

    #[test]
    fn examples() {
        let ctx = ten();
        let cert =
            verify_quadruple(&[1, 3, 8, 120].map(RingElement::integer), &e(1, 0), &ctx).unwrap();
        assert_eq!(
            cert.witnesses,
            [2, 3, 11, 5, 19, 31].map(RingElement::integer)
        );
        let cert = verify_quadruple(&[2, 56, 38, 186].map(RingElement::integer), &e(-12, 0), &ctx)
            .unwrap();
        // Pair (1, 4) is 2 * 186 - 12 = 360 = (0, 6)^2.
        assert_eq!(cert.witnesses[2], e(0, 6));
        assert_eq!(
            verify_quadruple(&[1, 2, 3, 4].map(RingElement::integer), &e(1, 0), &ctx),
            Err(VerifyFailure::NotSquare(0, 1))
        );
        assert_eq!(
            verify_quadruple(&[1, 3, 3, 120].map(RingElement::integer), &e(1, 0), &ctx),
            Err(VerifyFailure::NotDistinct(1, 2))
        );
        assert_eq!(
            verify_quadruple(&[1, 0, 8, 120].map(RingElement::integer), &e(1, 0), &ctx),
            Err(VerifyFailure::Zero(1))
        );
    }

    #[test]
    fn failure_messages_name_the_pair() {
        assert_eq!(
            VerifyFailure::NotSquare(1, 2).to_string(),
            "pair 23: e2 * e3 + n is not a square"
        );
    }
}
