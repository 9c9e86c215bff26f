//! Reference Hodge star table in the customary cyclic orientation
//! (`dz∧dx`, `dz∧dx∧dt`) and its verification against the computed stars.

use crate::basis::BasisForm;
use crate::form::KForm;
use crate::hodge::{double_star_factor, hodge_star, scaled_hodge_star};
use crate::material::MaterialParams;
use crate::poly::{PolyField, Rational, Var};

use Var::{T, X, Y, Z};

/// Which material parameter scales an entry of the `★_α` column.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StarWeight {
    Alpha,
    Epsilon,
}

/// One row of the table: a basis form written in display order, its
/// Euclidean star and its scaled star, each as `sign · weight · basis`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HodgeTableEntry {
    pub input: &'static [Var],
    pub star: (i8, &'static [Var]),
    pub scaled: (i8, StarWeight, &'static [Var]),
}

const fn entry(
    input: &'static [Var],
    sign: i8,
    output: &'static [Var],
    weight: StarWeight,
) -> HodgeTableEntry {
    HodgeTableEntry {
        input,
        star: (sign, output),
        scaled: (sign, weight, output),
    }
}

use StarWeight::{Alpha, Epsilon};

pub const HODGE_TABLE: [HodgeTableEntry; 16] = [
    entry(&[], 1, &[X, Y, Z, T], Alpha),
    entry(&[X], 1, &[Y, Z, T], Alpha),
    entry(&[Y], 1, &[Z, X, T], Alpha),
    entry(&[Z], 1, &[X, Y, T], Alpha),
    entry(&[T], -1, &[X, Y, Z], Epsilon),
    entry(&[Y, Z], 1, &[X, T], Alpha),
    entry(&[Z, X], 1, &[Y, T], Alpha),
    entry(&[X, Y], 1, &[Z, T], Alpha),
    entry(&[X, T], 1, &[Y, Z], Epsilon),
    entry(&[Y, T], 1, &[Z, X], Epsilon),
    entry(&[Z, T], 1, &[X, Y], Epsilon),
    entry(&[X, Y, Z], 1, &[T], Alpha),
    entry(&[Y, Z, T], -1, &[X], Epsilon),
    entry(&[Z, X, T], -1, &[Y], Epsilon),
    entry(&[X, Y, T], -1, &[Z], Epsilon),
    entry(&[X, Y, Z, T], 1, &[], Epsilon),
];

/// `dz∧dx`-style label for an ordered list of differentials.
pub fn display_label(vars: &[Var]) -> String {
    if vars.is_empty() {
        return "1".to_string();
    }
    vars.iter().map(|v| format!("d{v}")).collect::<Vec<_>>().join("∧")
}

/// `coeff · dv₁∧dv₂∧…` in canonical storage; the reordering sign goes into the
/// coefficient.
pub fn oriented_form(vars: &[Var], coeff: PolyField) -> KForm {
    let (sign, basis) = BasisForm::from_vars(vars).expect("distinct differentials");
    KForm::from_component(basis, if sign < 0 { -coeff } else { coeff })
}

/// Outcome of comparing one table cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellCheck {
    pub cell: String,
    pub expected: KForm,
    pub computed: KForm,
}

impl CellCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

/// Checks both star columns of every entry. Distinct α and ε are needed to
/// tell the two weights apart.
pub fn verify_hodge_table(table: &[HodgeTableEntry], m: &MaterialParams) -> Vec<CellCheck> {
    let mut out = Vec::with_capacity(2 * table.len());
    for e in table {
        let input = oriented_form(e.input, PolyField::one());
        let label = display_label(e.input);

        let (sign, vars) = e.star;
        out.push(CellCheck {
            cell: format!("★({label})"),
            expected: oriented_form(vars, PolyField::from(sign as i64)),
            computed: hodge_star(&input),
        });

        let (sign, weight, vars) = e.scaled;
        let w = match weight {
            StarWeight::Alpha => m.alpha().clone(),
            StarWeight::Epsilon => m.epsilon().clone(),
        };
        let coeff = PolyField::constant(w * Rational::from_integer((sign as i64).into()));
        out.push(CellCheck {
            cell: format!("★_α({label})"),
            expected: oriented_form(vars, coeff),
            computed: scaled_hodge_star(&input, m),
        });
    }
    out
}

/// `(−1)^{k(4−k)} ★★_α ω = α ω` (dt-free ω) or `ε ω` (ω containing dt), for
/// every basis form.
pub fn verify_double_star(m: &MaterialParams) -> Vec<CellCheck> {
    BasisForm::all()
        .map(|b| {
            let k = b.degree();
            let w: KForm = KForm::basis(b);
            let mut computed = hodge_star(&scaled_hodge_star(&w, m));
            if (k * (4 - k)) % 2 == 1 {
                computed = -&computed;
            }
            CellCheck {
                cell: format!("★★_α({b})"),
                expected: w.scale(&double_star_factor(b, m)),
                computed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn params() -> MaterialParams {
        MaterialParams::diffusive(rational(3, 7), rational(5, 11)).unwrap()
    }

    #[test]
    fn table_covers_every_basis_once() {
        let mut masks: Vec<u8> = HODGE_TABLE
            .iter()
            .map(|e| BasisForm::from_vars(e.input).unwrap().1.mask())
            .collect();
        masks.sort();
        assert_eq!(masks, (0..16).collect::<Vec<u8>>());
    }

    #[test]
    fn all_cells_match() {
        let checks = verify_hodge_table(&HODGE_TABLE, &params());
        assert_eq!(checks.len(), 32);
        for c in &checks {
            assert!(c.passed(), "{}: {:?} vs {:?}", c.cell, c.expected, c.computed);
        }
    }

    #[test]
    fn corrupted_entry_is_named() {
        let mut table = HODGE_TABLE;
        table[9].star.0 = -1;
        let failed: Vec<String> = verify_hodge_table(&table, &params())
            .into_iter()
            .filter(|c| !c.passed())
            .map(|c| c.cell)
            .collect();
        assert_eq!(failed, vec!["★(dy∧dt)".to_string()]);
    }

    #[test]
    fn double_star_is_scalar() {
        assert!(verify_double_star(&params()).iter().all(CellCheck::passed));
    }

    #[test]
    fn cyclic_orientation() {
        let f = oriented_form(&[Z, X], PolyField::one());
        assert_eq!(f.component(BasisForm::from_vars(&[X, Z]).unwrap().1), PolyField::from(-1));
        assert_eq!(display_label(&[Z, X, T]), "dz∧dx∧dt");
    }
}
