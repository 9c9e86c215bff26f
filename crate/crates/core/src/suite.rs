//! Named verification checks shared by the acceptance tests and the command
//! line. Every check carries an identifier that pins down the exact cell or
//! identity instance it covers.

use std::fmt;

use crate::convdiff::{exp_fitted_flux, flux, make_potential, ConvectionForm};
use crate::error::ConvDiffError;
use crate::expansion::{constraint_reference, emergent_constraint, expand_componentwise, Piece, SpatialField};
use crate::form::{exterior_derivative, wedge};
use crate::hodge::{hodge_star, scaled_hodge_star};
use crate::material::MaterialParams;
use crate::poly::{rational, PolyField, Rational};
use crate::sampling::Sampler;
use crate::tables::{verify_double_star, verify_hodge_table, HodgeTableEntry, HODGE_TABLE};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Pass,
    Fail,
    /// An informational value, such as a nonzero constraint, that is not a
    /// failure.
    Value,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Value => "value",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    /// The table or identity the check reproduces.
    pub target: &'static str,
    pub outcome: Outcome,
    pub detail: String,
}

impl Check {
    fn new(id: impl Into<String>, target: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            target,
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            detail: detail.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} ({})", self.outcome.label(), self.id, self.target)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| c.failed()).collect()
}

pub const HODGE_TARGET: &str = "Hodge star table";
pub const DOUBLE_STAR_TARGET: &str = "double-star scaling";
pub const EXPANSION_TARGET: &str = "component-wise expansion of the unified operator";

/// Default parameters for table checks; α ≠ ε so that the two weights are
/// distinguishable.
pub fn table_params() -> MaterialParams {
    MaterialParams::diffusive(rational(3, 2), rational(2, 7)).expect("positive")
}

pub fn hodge_table_checks(table: &[HodgeTableEntry], m: &MaterialParams) -> Vec<Check> {
    verify_hodge_table(table, m)
        .into_iter()
        .map(|c| {
            let detail = if c.passed() {
                String::new()
            } else {
                format!("expected {}, computed {}", c.expected, c.computed)
            };
            Check::new(c.cell.clone(), HODGE_TARGET, c.passed(), detail)
        })
        .collect()
}

pub fn double_star_checks(m: &MaterialParams) -> Vec<Check> {
    verify_double_star(m)
        .into_iter()
        .map(|c| {
            let detail = format!("α = {}, ε = {}", m.alpha(), m.epsilon());
            let detail = if c.passed() {
                detail
            } else {
                format!("{detail}: expected {}, computed {}", c.expected, c.computed)
            };
            Check::new(c.cell.clone(), DOUBLE_STAR_TARGET, c.passed(), detail)
        })
        .collect()
}

/// One check per cell of the expansion table of degree `k`.
pub fn expansion_checks(k: usize, field: &SpatialField, m: &MaterialParams) -> Result<Vec<Check>, ConvDiffError> {
    let report = expand_componentwise(k, field, m)?;
    let mut out = Vec::new();
    for row in &report.rows {
        for piece in Piece::ALL {
            let cell = row.cell(piece);
            let detail = if cell.matches() {
                String::new()
            } else {
                format!("expected {}, computed {}", cell.expected, cell.computed)
            };
            out.push(Check::new(
                format!("k={k} row {} column {}", row.basis, piece.label()),
                EXPANSION_TARGET,
                cell.matches(),
                detail,
            ));
        }
    }
    Ok(out)
}

fn p(s: &str) -> PolyField {
    s.parse().expect("valid polynomial literal")
}

/// Fixed fields and parameters for the expansion tables of degree 0 to 4:
/// cubic data, a time-dependent polynomial β and distinct α, ε.
pub fn default_expansion_case(k: usize) -> (SpatialField, MaterialParams) {
    let m = MaterialParams::new(
        rational(3, 2),
        rational(2, 7),
        [p("y + 1"), p("x*t - z"), p("2 + x^2")],
    )
    .expect("positive");
    let field = match k {
        0 | 3 => SpatialField::Scalar(p("x^2*y - 3*z*t + x*y*z + t^3")),
        // 4-forms carry no spatial data
        4 => SpatialField::Scalar(PolyField::zero()),
        _ => SpatialField::Vector([p("x*y*t + z^2"), p("y^3 - x*t"), p("x*z - 2*y*t^2")]),
    };
    (field, m)
}

/// Every cell of the expansion tables of degree 0 to 4.
pub fn default_expansion_checks() -> Result<Vec<Check>, ConvDiffError> {
    let mut out = Vec::new();
    for k in 0..=4 {
        let (field, m) = default_expansion_case(k);
        out.extend(expansion_checks(k, &field, &m)?);
    }
    Ok(out)
}

fn sign(n: usize) -> Rational {
    if n % 2 == 0 {
        rational(1, 1)
    } else {
        rational(-1, 1)
    }
}

/// Randomized exact identities. `count` instances of each family are drawn
/// from a generator seeded with `seed`.
pub fn identity_checks(seed: u64, count: usize) -> Vec<Check> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    let mut tally = |name: &str, target: &'static str, results: Vec<(bool, String)>| {
        let total = results.len();
        let mut failed = 0;
        for (i, (ok, detail)) in results.into_iter().enumerate() {
            if !ok {
                failed += 1;
                out.push(Check::new(format!("{name} #{i}"), target, false, detail));
            }
        }
        if failed == 0 {
            out.push(Check::new(name, target, true, format!("{total} instances")));
        }
    };

    let dd = (0..count)
        .map(|i| {
            let k = i % 3;
            let w = s.form(k, 3);
            let ddw = exterior_derivative(&exterior_derivative(&w).expect("k < 4")).expect("k < 3");
            (ddw.is_zero(), format!("d(d w) = {ddw} for the {k}-form {w}"))
        })
        .collect();
    tally("d∘d = 0", "nilpotency of the exterior derivative", dd);

    let leibniz = (0..count)
        .map(|i| {
            let pdeg = i % 3;
            let qdeg = (i / 3) % (4 - pdeg);
            let (a, b) = (s.form(pdeg, 2), s.form(qdeg, 2));
            let lhs = exterior_derivative(&wedge(&a, &b).expect("p + q ≤ 3")).expect("degree ≤ 3");
            let da = exterior_derivative(&a).expect("p < 4");
            let db = exterior_derivative(&b).expect("q < 4");
            let rhs = &wedge(&da, &b).expect("p + q + 1 ≤ 4") + &wedge(&a, &db).expect("p + q + 1 ≤ 4").scale(&sign(pdeg));
            (lhs == rhs, format!("degrees ({pdeg}, {qdeg}): {lhs} ≠ {rhs}"))
        })
        .collect();
    tally("graded Leibniz rule", "graded Leibniz rule", leibniz);

    let anti = (0..count)
        .map(|i| {
            let pdeg = i % 5;
            let qdeg = (i / 5) % (5 - pdeg);
            let (a, b) = (s.form(pdeg, 2), s.form(qdeg, 2));
            let ab = wedge(&a, &b).expect("p + q ≤ 4");
            let ba = wedge(&b, &a).expect("p + q ≤ 4").scale(&sign(pdeg * qdeg));
            (ab == ba, format!("degrees ({pdeg}, {qdeg}): {ab} ≠ {ba}"))
        })
        .collect();
    tally("wedge anticommutativity", "graded anticommutativity of ∧", anti);

    let linear = (0..count)
        .map(|i| {
            let k = i % 4;
            let (a, b, c) = (s.form(k, 3), s.form(k, 3), s.coefficient());
            let beta = s.vector(2);
            let m = s.params(beta);
            let combo = &a.scale(&c) + &b;
            let d_ok = exterior_derivative(&combo)
                == exterior_derivative(&a)
                    .zip(exterior_derivative(&b))
                    .map(|(da, db)| &da.scale(&c) + &db);
            let star_ok = scaled_hodge_star(&combo, &m)
                == &scaled_hodge_star(&a, &m).scale(&c) + &scaled_hodge_star(&b, &m);
            (d_ok && star_ok, format!("k={k}, c = {c}: d linear {d_ok}, ★_α linear {star_ok}"))
        })
        .collect();
    tally("linearity of d and ★_α", "linearity", linear);

    let double = (0..count)
        .map(|i| {
            let k = i % 5;
            let w = s.form(k, 2);
            let beta = s.vector(2);
            let m = s.params(beta);
            let computed = hodge_star(&scaled_hodge_star(&w, &m)).scale(&sign(k * (4 - k)));
            let expected = &w.spatial_part().scale(m.alpha()) + &w.temporal_part().scale(m.epsilon());
            (computed == expected, format!("k={k}, α = {}, ε = {}", m.alpha(), m.epsilon()))
        })
        .collect();
    tally("double-star scaling", DOUBLE_STAR_TARGET, double);

    let fitted = (0..count)
        .map(|i| {
            let k = i % 4;
            let w = s.form(k, 3);
            let beta = s.closed_beta(i % 2 == 0);
            let m = s.params(beta);
            let b = ConvectionForm::build(&m).expect("constant α");
            let direct = flux(&w, &b).expect("k ≤ 3");
            match make_potential(&b).and_then(|pot| exp_fitted_flux(&w, &pot)) {
                Ok(fit) => (fit == direct, format!("k={k}: {direct} ≠ {fit}")),
                Err(e) => (false, format!("k={k}: {e}")),
            }
        })
        .collect();
    tally("flux = exponentially fitted flux", "exponential fitting of the flux", fitted);

    let no_potential = (0..count.clamp(1, 10))
        .map(|_| {
            let beta = s.open_beta();
            let m = s.params(beta);
            let b = ConvectionForm::build(&m).expect("constant α");
            match make_potential(&b) {
                Err(ConvDiffError::NoPotential { .. }) => (true, String::new()),
                other => (false, format!("expected NoPotential, got {other:?}")),
            }
        })
        .collect();
    tally("non-closed b₁ has no potential", "exponential fitting of the flux", no_potential);

    let constraints = (0..count)
        .map(|i| {
            let k = 1 + i % 3;
            let field = if k == 3 {
                SpatialField::Scalar(s.cubic())
            } else {
                SpatialField::Vector(s.vector(3))
            };
            let beta = s.vector(2);
            let m = s.params(beta);
            match emergent_constraint(k, &field, &m) {
                Ok(c) => {
                    let r = constraint_reference(k, &field);
                    (c == r, format!("k={k}: {c} ≠ {r}"))
                }
                Err(e) => (false, format!("k={k}: {e}")),
            }
        })
        .collect();
    tally("emergent constraints", "emergent constraints of the dt-block", constraints);

    out.extend(fixed_examples());
    out
}

/// The constraint value for `u = x + y` and the missing potential for
/// `β = (y, 0, 0)`.
fn fixed_examples() -> Vec<Check> {
    let mut out = Vec::new();
    let m = MaterialParams::diffusive(rational(1, 1), rational(1, 1)).expect("positive");
    let field = SpatialField::Scalar(p("x + y"));
    match emergent_constraint(3, &field, &m) {
        Ok(c) => {
            let ok = c == constraint_reference(3, &field);
            let comps: Vec<String> = c.components().map(|(b, v)| format!("{v} {b}")).collect();
            out.push(Check {
                id: "constraint value k=3, u = x + y".into(),
                target: "emergent constraints of the dt-block",
                outcome: if ok { Outcome::Value } else { Outcome::Fail },
                detail: format!("−∇u = (−1, −1, 0): {}", comps.join(" + ")),
            });
        }
        Err(e) => out.push(Check::new("constraint value k=3, u = x + y", "emergent constraints of the dt-block", false, e.to_string())),
    }

    let m = MaterialParams::new(rational(1, 1), rational(1, 1), [p("y"), PolyField::zero(), PolyField::zero()])
        .expect("positive");
    let b = ConvectionForm::build(&m).expect("constant α");
    let (ok, detail) = match make_potential(&b) {
        Err(e @ ConvDiffError::NoPotential { .. }) => (true, e.to_string()),
        other => (false, format!("expected NoPotential, got {other:?}")),
    };
    out.push(Check::new("potential for β = (y, 0, 0)", "exponential fitting of the flux", ok, detail));
    out
}

/// The whole table suite: 32 star entries, the double-star scaling for each
/// basis form, and every expansion cell.
pub fn table_suite() -> Result<Vec<Check>, ConvDiffError> {
    let m = table_params();
    let mut out = hodge_table_checks(&HODGE_TABLE, &m);
    out.extend(double_star_checks(&m));
    out.extend(default_expansion_checks()?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::StarWeight;

    #[test]
    fn default_tables_pass() {
        let checks = table_suite().unwrap();
        assert!(failures(&checks).is_empty(), "{:?}", failures(&checks));
        assert_eq!(checks.iter().filter(|c| c.target == HODGE_TARGET).count(), 32);
    }

    #[test]
    fn corrupted_sign_names_the_cell() {
        let mut table = HODGE_TABLE;
        let (sign, weight, vars) = table[3].scaled;
        table[3].scaled = (-sign, weight, vars);
        assert!(matches!(weight, StarWeight::Alpha | StarWeight::Epsilon));
        let checks = hodge_table_checks(&table, &table_params());
        let failed = failures(&checks);
        assert_eq!(failed.len(), 1);
        assert!(failed[0].id.starts_with("★_α("));
    }

    #[test]
    fn identities_are_deterministic_and_pass() {
        let a = identity_checks(42, 12);
        assert_eq!(a, identity_checks(42, 12));
        assert!(failures(&a).is_empty(), "{:?}", failures(&a));
        assert!(a.iter().any(|c| c.outcome == Outcome::Value));
    }
}
