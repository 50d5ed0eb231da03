//! n = (4m, 4k). `3n = 6 * (2m, 2k)`, so `alpha1 = 6` and
//! `a + 2r = (m + 3, k)`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::recipe::{run_recipe, AlphaSource};
use super::support::{classify_support, SupportTag};
use super::table::{NEG_UNIT, THM12_CASE_IV, UNIT};
use super::{assemble, known_certificate, Provenance, QuadrupleCertificate};
use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};

fn small(v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Precondition(format!("parameter {v} out of range")))
}

pub fn construct_thm12(
    n: &RingElement,
    ctx: &RingContext,
    budget: usize,
) -> Result<QuadrupleCertificate> {
    if !(n.x.is_multiple_of(&4.into()) && n.y.is_multiple_of(&4.into())) || n.is_zero() {
        return Err(Error::WrongClass {
            n: n.to_string(),
            what: "(4m, 4k)".into(),
        });
    }
    let status = classify_support(n, ctx)?;
    match status.tag {
        SupportTag::ConstructibleHere => {}
        SupportTag::DelegatedPriorWork => {
            return Err(Error::Delegated {
                n: n.to_string(),
                status,
            })
        }
        _ => {
            return Err(Error::Excluded {
                n: n.to_string(),
                status,
            })
        }
    }
    let (m, k) = (small(&(&n.x / 4))?, small(&(&n.y / 4))?);
    let six = AlphaSource::Fixed(RingElement::integer(6));
    let base = |tag: &str| Provenance::new(tag).with("m", m).with("k", k);
    match (m.rem_euclid(2), k.rem_euclid(2)) {
        (0, 0) => run_recipe(ctx, n, &six, &UNIT, budget, base("thm12.caseI")),
        (1, 0) => {
            let (m1, k1) = ((m - 1) / 2, k / 2);
            let prov = base("thm12.caseII").with("m1", m1).with("k1", k1);
            if m1.rem_euclid(2) == 1 {
                return run_recipe(ctx, n, &six, &UNIT.scaled(2), budget, prov);
            }
            // m1 even, k1 even (m1 even with k1 odd is delegated above).
            if let Some(known) = known_certificate(ctx, n) {
                let tag = Provenance::new("thm12.caseII.degenerate")
                    .with("m", m)
                    .with("k", k);
                let inner = known.provenance.clone();
                return Ok(known.with_provenance(tag.with_inner(inner)));
            }
            if (m, k) == (-3, 0) {
                return minus_12(ctx, n, budget);
            }
            run_recipe(ctx, n, &six, &UNIT.scaled(4), budget, prov)
        }
        (0, 1) => run_recipe(ctx, n, &six, &NEG_UNIT, budget, base("thm12.caseIII")),
        _ => {
            let (m1, k1) = ((m - 1) / 2, (k - 1) / 2);
            let row = THM12_CASE_IV
                .lookup(m1, k1)
                .expect("classify_support already excluded the uncovered cells");
            let prov = base("thm12.caseIV")
                .with("m1", m1)
                .with("k1", k1)
                .with("row", row_index(row.label));
            run_recipe(ctx, n, &six, &row.a, budget, prov)
        }
    }
}

fn row_index(label: &str) -> i64 {
    THM12_CASE_IV
        .rows
        .iter()
        .position(|r| r.label == label)
        .map_or(-1, |i| i as i64)
}

/// n = -12. `3n = -18 * 2` puts `a + 2r = -8`, so `a = 4u` forces
/// `r = -4 - 2u` and `b = u + 4 + 7 conj(u)`. For d = 10 the rational
/// quadruple `{2, 56, 38, 186}` (`3n = (-18, 6)(-18, -6)`, `a = 2`, `r = -10`)
/// is returned instead.
fn minus_12(ctx: &RingContext, n: &RingElement, budget: usize) -> Result<QuadrupleCertificate> {
    let a = RingElement::integer(2);
    let r = RingElement::integer(-10);
    if let Some(cert) = assemble(ctx, &a, &r, n) {
        let alpha1 = RingElement::new(-18, 6);
        return Ok(cert.with_provenance(
            Provenance::new("thm12.caseII.fixed")
                .with("alpha1_x", alpha1.x)
                .with("alpha1_y", alpha1.y)
                .with("a_x", 2)
                .with("r_x", -10),
        ));
    }
    let alpha1 = AlphaSource::Fixed(RingElement::integer(-18));
    let prov = Provenance::new("thm12.caseII.minus12");
    run_recipe(ctx, n, &alpha1, &UNIT.scaled(4), budget, prov)
}
