//! n = (4m + 2, 4k). `3n = 6 (2m + 1, 2k)`; `alpha1` comes from the norm
//! `±6` classes and `alpha2 = 3n / alpha1`.

use num_bigint::BigInt;
use num_integer::Integer;

use super::recipe::{run_recipe, AlphaSource};
use super::support::{classify_support, SupportTag};
use super::table::{Alpha, CaseTable, ALPHA_M2, ALPHA_P4, THM13_CASE_IV_M1, THM13_CASE_I_M0, UNIT};
use super::{Provenance, QuadrupleCertificate};
use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};

fn small(v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Precondition(format!("parameter {v} out of range")))
}

pub fn construct_thm13(
    n: &RingElement,
    ctx: &RingContext,
    budget: usize,
) -> Result<QuadrupleCertificate> {
    let four = BigInt::from(4);
    let in_class = (&n.x - BigInt::from(2)).is_multiple_of(&four) && n.y.is_multiple_of(&four);
    if !in_class {
        return Err(Error::WrongClass {
            n: n.to_string(),
            what: "(4m + 2, 4k)".into(),
        });
    }
    let status = classify_support(n, ctx)?;
    if status.tag != SupportTag::ConstructibleHere {
        return Err(Error::Excluded {
            n: n.to_string(),
            status,
        });
    }
    let (m, k) = (small(&((&n.x - 2) / 4))?, small(&(&n.y / 4))?);
    let base = |tag: &str| Provenance::new(tag).with("m", m).with("k", k);
    let form = |f| AlphaSource::Form(f);
    match (m.rem_euclid(4), k.rem_euclid(2)) {
        (2, 0) => run_recipe(
            ctx,
            n,
            &form(ALPHA_P4),
            &UNIT.scaled(4),
            budget,
            base("thm13.caseI.m2mod4"),
        ),
        (0, 0) => {
            let (m1, k1) = (m / 4, k / 2);
            by_table(ctx, n, &THM13_CASE_I_M0, m1, k1, budget, base(THM13_CASE_I_M0.name))
        }
        (0 | 2, 1) => run_recipe(
            ctx,
            n,
            &form(ALPHA_P4),
            &UNIT.scaled(2),
            budget,
            base("thm13.caseII"),
        ),
        (_, 0) => run_recipe(
            ctx,
            n,
            &form(ALPHA_M2),
            &UNIT.scaled(2),
            budget,
            base("thm13.caseIII"),
        ),
        (3, 1) => run_recipe(
            ctx,
            n,
            &form(ALPHA_M2),
            &UNIT.scaled(4),
            budget,
            base("thm13.caseIV.m3mod4"),
        ),
        _ => {
            let (m1, k1) = ((m - 1) / 4, (k - 1) / 2);
            by_table(ctx, n, &THM13_CASE_IV_M1, m1, k1, budget, base(THM13_CASE_IV_M1.name))
        }
    }
}

fn by_table(
    ctx: &RingContext,
    n: &RingElement,
    table: &CaseTable,
    m1: i64,
    k1: i64,
    budget: usize,
    prov: Provenance,
) -> Result<QuadrupleCertificate> {
    let row = table
        .lookup(m1, k1)
        .expect("classify_support already excluded the uncovered cells");
    let index = table.rows.iter().position(|r| r.label == row.label).unwrap_or(0);
    let alpha = match row.alpha1 {
        Alpha::Six => AlphaSource::Fixed(RingElement::integer(6)),
        Alpha::Form(f) => AlphaSource::Form(f),
    };
    let prov = prov
        .with("m1", m1)
        .with("k1", k1)
        .with("row", index as i64);
    run_recipe(ctx, n, &alpha, &row.a, budget, prov)
}
