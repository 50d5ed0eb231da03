//! The d = 10 constructions for the residue classes both theorems exclude.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::recipe::try_pair;
use super::{Provenance, QuadrupleCertificate};
use crate::error::{Error, Result};
use crate::ring::{RingContext, RingElement};

/// The four exceptional families, indexed by integers `m, k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExceptionalFamily {
    /// `4(12m + 5, 6k + 3)`
    E1,
    /// `4(12m + 11, 6k + 3)`
    E2,
    /// `(4(12m + 9) + 2, 4(6k + 3))`
    E3,
    /// `(48m + 2, 24k)`
    E4,
}

impl ExceptionalFamily {
    pub const ALL: [ExceptionalFamily; 4] = [Self::E1, Self::E2, Self::E3, Self::E4];

    /// `(x offset, y offset)`; every family is `(48m + x0, 24k + y0)`.
    fn offsets(self) -> (i64, i64) {
        match self {
            Self::E1 => (20, 12),
            Self::E2 => (44, 12),
            Self::E3 => (38, 12),
            Self::E4 => (2, 0),
        }
    }

    pub fn element(self, m: i64, k: i64) -> RingElement {
        let (x0, y0) = self.offsets();
        RingElement::new(48 * m + x0, 24 * k + y0)
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::E1 => "4(12m+5, 6k+3)",
            Self::E2 => "4(12m+11, 6k+3)",
            Self::E3 => "(4(12m+9)+2, 4(6k+3))",
            Self::E4 => "(48m+2, 24k)",
        }
    }

    pub fn open_set_label(self) -> &'static str {
        match self {
            Self::E1 => "S1",
            Self::E2 => "S2",
            Self::E3 => "S3",
            Self::E4 => "S4",
        }
    }

    /// Residues of `m` mod 5 where the d = 10 example applies.
    pub fn example_residues(self) -> [i64; 2] {
        match self {
            Self::E1 => [2, 3],
            Self::E2 => [0, 4],
            Self::E3 => [1, 2],
            Self::E4 => [3, 4],
        }
    }

    /// `(m, k) mod (5, 5)` where `n` is `d` times a prior-work class.
    pub fn reduction_cell(self) -> (i64, i64) {
        match self {
            Self::E1 => (0, 2),
            Self::E2 => (2, 2),
            Self::E3 => (4, 2),
            Self::E4 => (1, 0),
        }
    }
}

/// Family and `(m, k)` of `n`, if it lies in one.
pub fn exceptional_family(n: &RingElement) -> Option<(ExceptionalFamily, BigInt, BigInt)> {
    ExceptionalFamily::ALL.into_iter().find_map(|f| {
        let (x0, y0) = f.offsets();
        let (m, rx) = (&n.x - x0).div_mod_floor(&BigInt::from(48));
        let (k, ry) = (&n.y - y0).div_mod_floor(&BigInt::from(24));
        (rx.is_zero() && ry.is_zero()).then_some((f, m, k))
    })
}

struct ExampleRecipe {
    tag: &'static str,
    alpha1: RingElement,
    base: RingElement,
    base_scale: i64,
    odd_t: bool,
    /// `a = (x_mod * A + x_off, y_mod * B + y_off)`.
    form: (i64, i64, i64, i64),
}

fn recipe(family: ExceptionalFamily) -> ExampleRecipe {
    match family {
        ExceptionalFamily::E1 => ExampleRecipe {
            tag: "ex3",
            alpha1: RingElement::new(-18, 6),
            base: RingElement::new(0, 1),
            base_scale: 1,
            odd_t: true,
            form: (20, 0, 10, -1),
        },
        ExceptionalFamily::E2 => ExampleRecipe {
            tag: "ex3",
            alpha1: RingElement::new(-18, 6),
            base: RingElement::new(10, 3),
            base_scale: 1,
            odd_t: false,
            form: (20, 10, 10, 3),
        },
        ExceptionalFamily::E3 => ExampleRecipe {
            tag: "ex4",
            alpha1: RingElement::new(4, 1),
            base: RingElement::new(10, 3),
            base_scale: 1,
            odd_t: false,
            form: (20, 10, 10, 3),
        },
        ExceptionalFamily::E4 => ExampleRecipe {
            tag: "ex4",
            alpha1: RingElement::new(4, 1),
            base: RingElement::new(10, 3),
            base_scale: 2,
            odd_t: false,
            form: (40, 20, 20, 6),
        },
    }
}

fn matches_form(u: &RingElement, (xm, xo, ym, yo): (i64, i64, i64, i64)) -> bool {
    (&u.x - xo).mod_floor(&BigInt::from(xm)).is_zero()
        && (&u.y - yo).mod_floor(&BigInt::from(ym)).is_zero()
}

/// The d = 10 constructions, with `a = c (19, 6)^t base`.
///
/// On `4(12m+5, 6k+3)`, `m = 2, 3 mod 5`) uses `alpha1 = (-18, 6)`,
/// `a = (19, 6)^t (0, 1)` with `t` odd. On `4(12m+11, 6k+3)`
/// (`m = 0, 4 mod 5`) keeps `alpha1` and takes `a = (19, 6)^t (10, 3)`, `t` even.
/// On `(4(12m+9)+2, 4(6k+3))`, `m = 1, 2 mod 5`) uses `alpha1 = (4, 1)`,
/// `a = (19, 6)^t (10, 3)`, `t` even; on `(48m+2, 24k)`
/// (`m = 3, 4 mod 5`) doubles that `a`.
pub fn construct_d10(ctx: &RingContext, n: &RingElement, t: u32) -> Result<QuadrupleCertificate> {
    if ctx.d() != 10 {
        return Err(Error::Precondition(format!(
            "the examples need d = 10, got d = {}",
            ctx.d()
        )));
    }
    let (family, m, k) = exceptional_family(n).ok_or_else(|| {
        Error::Precondition(format!("n = {n} is in none of the exceptional families"))
    })?;
    let m5 = i64::try_from(m.mod_floor(&BigInt::from(5))).expect("residue");
    if !family.example_residues().contains(&m5) {
        return Err(Error::Precondition(format!(
            "n = {n} is {} with m = {m5} mod 5; the example needs m = {:?} mod 5",
            family.label(),
            family.example_residues()
        )));
    }
    let rec = recipe(family);
    if (t % 2 == 1) != rec.odd_t {
        return Err(Error::Precondition(format!(
            "t = {t} has the wrong parity for {} (needs {} t)",
            family.label(),
            if rec.odd_t { "odd" } else { "even" }
        )));
    }
    let unit = RingElement::new(19, 6);
    let a = ctx
        .mul(&ctx.pow(&unit, t), &rec.base)
        .scale_i64(rec.base_scale);
    if !matches_form(&a, rec.form) {
        return Err(Error::Precondition(format!(
            "a = {a} does not have the expected shape"
        )));
    }
    let cert = try_pair(ctx, n, &n.scale_i64(3), &rec.alpha1, &a).ok_or_else(|| {
        Error::Precondition(format!("the {} recipe does not assemble for n = {n}", rec.tag))
    })?;
    let family_index = ExceptionalFamily::ALL.iter().position(|&f| f == family).unwrap() + 1;
    Ok(cert.with_provenance(
        Provenance::new(rec.tag)
            .with("family", family_index as i64)
            .with("m", m)
            .with("k", k)
            .with("t", t),
    ))
}
