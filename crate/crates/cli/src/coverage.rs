//! The coverage sweep: one row per `(m, k)` cell of a family, with the
//! support status and, where something is constructible, a verified result.

use std::fmt;
use std::io;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use quadring::builder::{
    classify_exceptional, classify_support, construct_auto, construct_thm12, construct_thm13,
    default_budget, AutoOptions, ExceptionalFamily,
};
use quadring::oracle::verify_quadruple;
use quadring::{RingContext, RingElement, SupportTag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `n = (4m, 4k)`
    Thm12,
    /// `n = (4m + 2, 4k)`
    Thm13,
    Exceptional(ExceptionalFamily),
}

impl Family {
    pub fn element(self, m: i64, k: i64) -> RingElement {
        match self {
            Family::Thm12 => RingElement::new(4 * m, 4 * k),
            Family::Thm13 => RingElement::new(4 * m + 2, 4 * k),
            Family::Exceptional(f) => f.element(m, k),
        }
    }

    /// Moduli of the residue grid the family's case analysis lives on.
    pub fn moduli(self) -> (i64, i64) {
        match self {
            Family::Thm12 => (6, 6),
            Family::Thm13 => (12, 6),
            Family::Exceptional(_) => (5, 5),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Family::Thm12 => "(4m,4k)",
            Family::Thm13 => "(4m+2,4k)",
            Family::Exceptional(f) => f.label(),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "thm12" => Family::Thm12,
            "thm13" => Family::Thm13,
            "s1" => Family::Exceptional(ExceptionalFamily::E1),
            "s2" => Family::Exceptional(ExceptionalFamily::E2),
            "s3" => Family::Exceptional(ExceptionalFamily::E3),
            "s4" => Family::Exceptional(ExceptionalFamily::E4),
            _ => return Err(format!("unknown family {s:?}; use thm12, thm13, s1, s2, s3 or s4")),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Thm12 => "thm12",
            Family::Thm13 => "thm13",
            Family::Exceptional(e) => e.open_set_label(),
        };
        f.write_str(&s.to_ascii_lowercase())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverageRow {
    pub family: String,
    pub m: i64,
    pub k: i64,
    /// `(m, k)` reduced modulo the family's grid.
    pub class: String,
    pub n: String,
    pub status: SupportTag,
    /// Provenance tag of the construction, or the reason nothing was built.
    pub detail: String,
    pub verified: bool,
}

fn row(ctx: &RingContext, family: Family, m: i64, k: i64) -> CoverageRow {
    let n = family.element(m, k);
    let (mm, km) = family.moduli();
    let class = format!(
        "({},{}) mod ({mm},{km})",
        m.rem_euclid(mm),
        k.rem_euclid(km)
    );
    let status = match family {
        Family::Exceptional(_) => classify_exceptional(&n, ctx),
        _ => classify_support(&n, ctx),
    };
    let (status, detail, verified) = match status {
        Err(e) => (SupportTag::Unknown, e.to_string(), false),
        Ok(st) if st.tag != SupportTag::ConstructibleHere => (st.tag, st.detail, false),
        Ok(st) => {
            let built = match family {
                Family::Thm12 => construct_thm12(&n, ctx, default_budget()),
                Family::Thm13 => construct_thm13(&n, ctx, default_budget()),
                Family::Exceptional(_) => construct_auto(&n, ctx, AutoOptions::default()),
            };
            match built {
                Ok(cert) => {
                    let ok = verify_quadruple(&cert.elements, &n, ctx).is_ok();
                    (st.tag, cert.provenance.to_string(), ok)
                }
                Err(e) => (st.tag, format!("construction failed: {e}"), false),
            }
        }
    };
    CoverageRow {
        family: family.to_string(),
        m,
        k,
        class,
        n: format!("{},{}", n.x, n.y),
        status,
        detail,
        verified,
    }
}

/// Rows in `(m, k)` order; cells are computed in parallel.
pub fn coverage(
    ctx: &RingContext,
    family: Family,
    m_range: RangeInclusive<i64>,
    k_range: RangeInclusive<i64>,
) -> Vec<CoverageRow> {
    let cells: Vec<(i64, i64)> = m_range
        .flat_map(|m| k_range.clone().map(move |k| (m, k)))
        .collect();
    cells
        .into_par_iter()
        .map(|(m, k)| row(ctx, family, m, k))
        .collect()
}

pub fn write_csv<W: io::Write>(rows: &[CoverageRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

const HEADERS: [&str; 8] = ["family", "m", "k", "class", "n", "status", "verified", "detail"];

/// Space-aligned columns; the free-text detail goes last.
pub fn write_text<W: io::Write>(rows: &[CoverageRow], mut out: W) -> io::Result<()> {
    let cells: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.family.clone(),
                r.m.to_string(),
                r.k.to_string(),
                r.class.clone(),
                r.n.clone(),
                r.status.to_string(),
                r.verified.to_string(),
                r.detail.clone(),
            ]
        })
        .collect();
    let mut widths = HEADERS.map(str::len);
    for c in &cells {
        for (w, s) in widths.iter_mut().zip(c) {
            *w = (*w).max(s.len());
        }
    }
    let line = |fields: &[&str]| -> String {
        let mut s = String::new();
        for (i, f) in fields.iter().enumerate() {
            if i + 1 == fields.len() {
                s.push_str(f);
            } else {
                s.push_str(&format!("{f:<w$}  ", w = widths[i]));
            }
        }
        s
    };
    writeln!(out, "{}", line(&HEADERS))?;
    for c in &cells {
        let refs: Vec<&str> = c.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&refs))?;
    }
    Ok(())
}
