//! Residue tables of the two theorems: for each sub-case, the gate on the
//! reduced parameters, the `alpha1` form, and the form of `a`.

use super::recipe::ElementForm;

pub const UNIT: ElementForm = ElementForm::new(1, (6, 1), (6, 0), ("a1", "b1"));
pub const NEG_UNIT: ElementForm = ElementForm::new(-1, (6, 3), (6, 1), ("a1", "b1"));

#[derive(Clone, Copy, Debug)]
pub enum Alpha {
    /// `alpha1 = 6`.
    Six,
    Form(ElementForm),
}

#[derive(Clone, Copy, Debug)]
pub struct SubCase {
    pub label: &'static str,
    /// Cells `(m1 mod mod_m, k1 mod mod_k)` where this sub-case applies.
    pub gate: &'static [(i64, i64)],
    pub alpha1: Alpha,
    pub a: ElementForm,
}

#[derive(Clone, Copy, Debug)]
pub struct CaseTable {
    pub name: &'static str,
    pub moduli: (i64, i64),
    pub rows: &'static [SubCase],
}

impl CaseTable {
    pub fn lookup(&self, m1: i64, k1: i64) -> Option<&'static SubCase> {
        let cell = (m1.rem_euclid(self.moduli.0), k1.rem_euclid(self.moduli.1));
        self.rows.iter().find(|row| row.gate.contains(&cell))
    }

    /// Cells no row covers, in ascending order.
    pub fn uncovered(&self) -> Vec<(i64, i64)> {
        let (mm, mk) = self.moduli;
        (0..mm)
            .flat_map(|i| (0..mk).map(move |j| (i, j)))
            .filter(|&(i, j)| self.lookup(i, j).is_none())
            .collect()
    }

    /// Cells claimed by more than one row.
    pub fn overlaps(&self) -> Vec<(i64, i64)> {
        let (mm, mk) = self.moduli;
        (0..mm)
            .flat_map(|i| (0..mk).map(move |j| (i, j)))
            .filter(|cell| self.rows.iter().filter(|r| r.gate.contains(cell)).count() > 1)
            .collect()
    }
}

const MN: (&str, &str) = ("M", "N");
const AB: (&str, &str) = ("a1", "b1");

/// n = (8 m1 + 4, 8 k1 + 4), alpha1 = 6.
pub const THM12_CASE_IV: CaseTable = CaseTable {
    name: "thm12.caseIV",
    moduli: (6, 3),
    rows: &[
        SubCase {
            label: "(12M+4, 6N+1)",
            gate: &[(0, 0), (0, 1), (2, 0), (2, 2), (4, 1), (4, 2)],
            alpha1: Alpha::Six,
            a: ElementForm::new(6, (12, 4), (6, 1), MN),
        },
        SubCase {
            label: "(12M+4, 6N-1)",
            gate: &[(0, 2), (4, 0)],
            alpha1: Alpha::Six,
            a: ElementForm::new(6, (12, 4), (6, -1), MN),
        },
        SubCase {
            label: "(12M+2, 6N+1)",
            gate: &[(1, 0), (1, 1), (3, 2), (5, 0), (5, 2)],
            alpha1: Alpha::Six,
            a: ElementForm::new(-6, (12, 2), (6, 1), MN),
        },
        SubCase {
            label: "(12M+2, 6N-1)",
            gate: &[(1, 2), (3, 0), (3, 1)],
            alpha1: Alpha::Six,
            a: ElementForm::new(-6, (12, 2), (6, -1), MN),
        },
    ],
};

/// n = (16 m1 + 2, 8 k1).
pub const THM13_CASE_I_M0: CaseTable = CaseTable {
    name: "thm13.caseI.m0mod4",
    moduli: (3, 3),
    rows: &[
        SubCase {
            label: "alpha1 = (-12M-2, 6N+1), a = (12a1+4, 6b1+1)",
            gate: &[(0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (2, 2)],
            alpha1: Alpha::Form(ElementForm::new(-6, (-12, -2), (6, 1), MN)),
            a: ElementForm::new(6, (12, 4), (6, 1), AB),
        },
        SubCase {
            label: "alpha1 = (-12M-2, 6N+1), a = (12a1-4, 6b1+1)",
            gate: &[(1, 2)],
            alpha1: Alpha::Form(ElementForm::new(-6, (-12, -2), (6, 1), MN)),
            a: ElementForm::new(6, (12, -4), (6, 1), AB),
        },
        SubCase {
            label: "alpha1 = (12M+2, 6N+1), a = (12a1+4, 6b1-1)",
            gate: &[(2, 1)],
            alpha1: Alpha::Form(ElementForm::new(-6, (12, 2), (6, 1), MN)),
            a: ElementForm::new(6, (12, 4), (6, -1), AB),
        },
    ],
};

/// n = (16 m1 + 6, 8 k1 + 4). The first row also holds at (1, 2), a cell the
/// narrower table leaves out; the theorem's exclusion is only (2, 1).
pub const THM13_CASE_IV_M1: CaseTable = CaseTable {
    name: "thm13.caseIV.m1mod4",
    moduli: (3, 3),
    rows: &[
        SubCase {
            label: "alpha1 = (12M+4, -6N-1), a = (12a1+2, 6b1+1)",
            gate: &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)],
            alpha1: Alpha::Form(ElementForm::new(6, (12, 4), (-6, -1), MN)),
            a: ElementForm::new(-6, (12, 2), (6, 1), AB),
        },
        SubCase {
            label: "alpha1 = (12M+4, -6N-1), a = (12a1-2, 6b1+1)",
            gate: &[(0, 2)],
            alpha1: Alpha::Form(ElementForm::new(6, (12, 4), (-6, -1), MN)),
            a: ElementForm::new(-6, (12, -2), (6, 1), AB),
        },
        SubCase {
            label: "alpha1 = (12M+4, 6N+1), a = (12a1+2, 6b1-1)",
            gate: &[(1, 0)],
            alpha1: Alpha::Form(ElementForm::new(6, (12, 4), (6, 1), MN)),
            a: ElementForm::new(-6, (12, 2), (6, -1), AB),
        },
    ],
};

/// The first row's gate without the (1, 2) cell.
pub const THM13_CASE_IV_M1_NARROW_FIRST_ROW: &[(i64, i64)] =
    &[(0, 0), (0, 1), (1, 1), (2, 0), (2, 2)];

/// `alpha1 = (12M+4, -6N-1)`, norm 6.
pub const ALPHA_P4: ElementForm = ElementForm::new(6, (12, 4), (-6, -1), MN);
/// `alpha1 = (-12M-2, 6N+1)`, norm -6.
pub const ALPHA_M2: ElementForm = ElementForm::new(-6, (-12, -2), (6, 1), MN);
