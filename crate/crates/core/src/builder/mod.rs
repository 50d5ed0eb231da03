//! Construction of D(n)-quadruples `{a, b, a+b+2r, a+4b+4r}` from
//! `ab + n = r^2` and a factorization `3n = alpha1 * alpha2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};

mod auto;
mod examples;
mod recipe;
mod reduce;
mod search;
mod support;
pub mod table;
mod thm12;
mod thm13;

pub use auto::{construct_auto, AutoOptions};
pub use examples::{construct_d10, exceptional_family, ExceptionalFamily};
pub use recipe::{default_budget, ElementForm, DEFAULT_RETRY_BUDGET, RETRY_BUDGET_ENV};
pub use reduce::{reduce_by_d, Reduction};
pub use search::{lemma21_search, SearchBounds};
pub use support::{classify_exceptional, classify_support, SupportStatus, SupportTag};
pub use thm12::construct_thm12;
pub use thm13::construct_thm13;

/// Pair labels in witness order.
pub const PAIR_LABELS: [&str; 6] = ["12", "13", "14", "23", "24", "34"];

/// Element indices for each witness.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Where a certificate came from: a stable tag plus named integer parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tag: String,
    pub params: BTreeMap<String, BigInt>,
    pub inner: Option<Box<Provenance>>,
}

impl Provenance {
    pub fn new(tag: impl Into<String>) -> Self {
        Self {
            tag: tag.into(),
            ..Self::default()
        }
    }

    pub fn with(mut self, name: &str, value: impl Into<BigInt>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    pub fn with_inner(mut self, inner: Provenance) -> Self {
        self.inner = Some(Box::new(inner));
        self
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        if !self.params.is_empty() {
            let parts: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " [{}]", parts.join(", "))?;
        }
        if let Some(inner) = &self.inner {
            write!(f, " <- {inner}")?;
        }
        Ok(())
    }
}

/// Four elements with the six roots witnessing `e_i e_j + n = w_ij^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrupleCertificate {
    pub d: u64,
    pub n: RingElement,
    pub elements: [RingElement; 4],
    pub witnesses: [RingElement; 6],
    pub provenance: Provenance,
}

impl QuadrupleCertificate {
    /// Re-checks every witness identity, distinctness and non-zeroness.
    pub fn check(&self, ctx: &RingContext) -> bool {
        if ctx.d() != self.d {
            return false;
        }
        if self.elements.iter().any(RingElement::is_zero) {
            return false;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if self.elements[i] == self.elements[j] {
                    return false;
                }
            }
        }
        PAIRS.iter().zip(&self.witnesses).all(|(&(i, j), w)| {
            ctx.mul(&self.elements[i], &self.elements[j]) + self.n.clone() == ctx.square(w)
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }
}

/// Builds `{a, b, a+b+2r, a+4b+4r}` with `b = (r^2 - n) / a`.
///
/// The (1,4) root is `alpha` when given and is recovered with `is_square`
/// otherwise. Returns `None` when `b` is not integral, an element is zero,
/// two elements coincide, or a witness fails to square correctly.
pub fn assemble(
    ctx: &RingContext,
    a: &RingElement,
    r: &RingElement,
    n: &RingElement,
) -> Option<QuadrupleCertificate> {
    assemble_with_alpha(ctx, a, r, n, None)
}

pub(crate) fn assemble_with_alpha(
    ctx: &RingContext,
    a: &RingElement,
    r: &RingElement,
    n: &RingElement,
    alpha: Option<&RingElement>,
) -> Option<QuadrupleCertificate> {
    if a.is_zero() {
        return None;
    }
    let b = ctx.exact_div(&(ctx.square(r) - n.clone()), a).ok()??;
    let two_r = r.scale_i64(2);
    let c = &(a + &b) + &two_r;
    let e = &(a + &b.scale_i64(4)) + &r.scale_i64(4);
    let alpha = match alpha {
        Some(alpha) => alpha.clone(),
        None => ctx.is_square(&(ctx.mul(a, &e) + n.clone()))?,
    };
    let witnesses = [
        r.clone(),
        a + r,
        alpha,
        &b + r,
        &b.scale_i64(2) + r,
        &(a + &b.scale_i64(2)) + &r.scale_i64(3),
    ];
    let cert = QuadrupleCertificate {
        d: ctx.d(),
        n: n.clone(),
        elements: [a.clone(), b, c, e],
        witnesses,
        provenance: Provenance::new("assemble"),
    };
    cert.check(ctx).then_some(cert)
}

/// Multiplies every element and witness by `w`, giving a D(w^2 n) certificate.
pub fn scale(
    ctx: &RingContext,
    w: &RingElement,
    cert: &QuadrupleCertificate,
) -> Result<QuadrupleCertificate> {
    if w.is_zero() {
        return Err(Error::ZeroArgument("scaling factor w"));
    }
    let scaled = QuadrupleCertificate {
        d: ctx.d(),
        n: ctx.mul(&ctx.square(w), &cert.n),
        elements: cert.elements.clone().map(|u| ctx.mul(w, &u)),
        witnesses: cert.witnesses.clone().map(|u| ctx.mul(w, &u)),
        provenance: Provenance::new("scaled")
            .with("w_x", w.x.clone())
            .with("w_y", w.y.clone())
            .with_inner(cert.provenance.clone()),
    };
    if scaled.check(ctx) {
        Ok(scaled)
    } else {
        Err(Error::Precondition(format!(
            "scaled certificate for n = {} does not verify",
            scaled.n
        )))
    }
}

/// Builds a certificate from four elements by finding every root with
/// `is_square`; `None` if any pair fails.
pub fn certify(
    ctx: &RingContext,
    elements: [RingElement; 4],
    n: &RingElement,
    provenance: Provenance,
) -> Option<QuadrupleCertificate> {
    let mut witnesses: Vec<RingElement> = Vec::with_capacity(6);
    for &(i, j) in &PAIRS {
        witnesses.push(ctx.is_square(&(ctx.mul(&elements[i], &elements[j]) + n.clone()))?);
    }
    let cert = QuadrupleCertificate {
        d: ctx.d(),
        n: n.clone(),
        elements,
        witnesses: witnesses.try_into().expect("six witnesses"),
        provenance,
    };
    cert.check(ctx).then_some(cert)
}

/// The rational D(1)-quadruple `{1, 3, 8, 120}`.
pub fn fermat_certificate(ctx: &RingContext) -> QuadrupleCertificate {
    certify(
        ctx,
        [1, 3, 8, 120].map(RingElement::integer),
        &RingElement::one(),
        Provenance::new("known.fermat"),
    )
    .expect("{1, 3, 8, 120} is a D(1)-quadruple in every ring")
}

/// Fixed certificates for `n = 1` and its scalings `n = 4`, `n = 36`.
pub fn known_certificate(ctx: &RingContext, n: &RingElement) -> Option<QuadrupleCertificate> {
    let w = match n.to_i64_pair()? {
        (1, 0) => return Some(fermat_certificate(ctx)),
        (4, 0) => 2,
        (36, 0) => 6,
        _ => return None,
    };
    scale(ctx, &RingElement::integer(w), &fermat_certificate(ctx)).ok()
}
