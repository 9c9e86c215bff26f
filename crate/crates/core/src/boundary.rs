//! Boundary operators on the space-time cylinder `Ω_x × [t₀, T]`: normal
//! 1-forms, wedge traces and the terminal condition `ι_{n_T}(★★_α d u) = 0`.

use crate::basis::BasisForm;
use crate::error::{ConvDiffError, FormError};
use crate::expansion::{build_solution_form, display_component, table_rows, SpatialField};
use crate::form::{exterior_derivative, interior_product_nt, wedge, KForm};
use crate::hodge::{hodge_star, scaled_hodge_star};
use crate::material::MaterialParams;
use crate::poly::{PolyField, Rational, Var};
use crate::tables::display_label;
use crate::vector_calculus::{self as vc, Vector3};

/// Outward normal of one boundary piece.
#[derive(Clone, Debug, PartialEq)]
pub enum NormalForm {
    /// `n₁dx + n₂dy + n₃dz` on the lateral boundary.
    SpatialX(Vector3),
    /// `−dt` on the slice `t = t₀`.
    InitialTime(Rational),
    /// `+dt` on the slice `t = T`.
    FinalTime(Rational),
}

impl NormalForm {
    pub fn form(&self) -> KForm {
        let components: Vec<_> = match self {
            NormalForm::SpatialX(n) => Var::SPATIAL
                .into_iter()
                .zip(n)
                .map(|(v, c)| (BasisForm::differential(v), c.clone()))
                .collect(),
            NormalForm::InitialTime(_) => vec![(BasisForm::differential(Var::T), PolyField::from(-1))],
            NormalForm::FinalTime(_) => vec![(BasisForm::differential(Var::T), PolyField::one())],
        };
        KForm::try_from_components(1, components).expect("1-form components")
    }

    fn slice(&self) -> Option<&Rational> {
        match self {
            NormalForm::SpatialX(_) => None,
            NormalForm::InitialTime(t) | NormalForm::FinalTime(t) => Some(t),
        }
    }
}

/// `n ∧ w`, restricted to `t = t₀` or `t = T` on the temporal faces. The
/// spatial face keeps `n` and the coefficients symbolic. Returns `None` for
/// 4-forms.
pub fn wedge_trace(n: &NormalForm, w: &KForm) -> Option<KForm> {
    let out = wedge(&n.form(), w)?;
    Some(match n.slice() {
        Some(t) => out.restrict(Var::T, t),
        None => out,
    })
}

/// `ι_{n_T}(★ ★_α d w)` at `t = T`. Returns `None` for 4-forms.
pub fn artificial_bc(w: &KForm, m: &MaterialParams, t_final: &Rational) -> Option<KForm> {
    let dw = exterior_derivative(w)?;
    let inner = hodge_star(&scaled_hodge_star(&dw, m));
    let out = interior_product_nt(&inner).expect("degree k+1 >= 1");
    Some(out.restrict(Var::T, t_final))
}

/// Where the boundary conditions are evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryGeometry {
    pub normal: Vector3,
    pub t0: Rational,
    pub t_final: Rational,
}

/// One basis coefficient of a boundary trace next to the classical quantity
/// it should reduce to.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionRow {
    pub basis: String,
    pub computed: PolyField,
    pub classical: PolyField,
}

/// A boundary condition written with forms, reduced to components.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedCondition {
    pub name: &'static str,
    pub summary: &'static str,
    pub applicable: bool,
    pub rows: Vec<ConditionRow>,
}

impl ReducedCondition {
    /// The common sign `s` with `computed = s · classical` on every row, if
    /// one exists. Vanishing of the trace is then equivalent to vanishing of
    /// the classical quantities.
    pub fn orientation(&self) -> Option<i8> {
        let mut sign = None;
        for row in &self.rows {
            if row.computed.is_zero() && row.classical.is_zero() {
                continue;
            }
            let s = if row.computed == row.classical {
                1
            } else if row.computed == -&row.classical {
                -1
            } else {
                return None;
            };
            match sign {
                None => sign = Some(s),
                Some(prev) if prev != s => return None,
                _ => {}
            }
        }
        Some(sign.unwrap_or(1))
    }

    pub fn reduces(&self) -> bool {
        self.orientation().is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub degree: usize,
    pub spatial: ReducedCondition,
    pub initial: ReducedCondition,
    pub terminal: ReducedCondition,
}

impl BoundaryReport {
    pub fn conditions(&self) -> [&ReducedCondition; 3] {
        [&self.spatial, &self.initial, &self.terminal]
    }

    pub fn all_reduce(&self) -> bool {
        self.conditions().iter().all(|c| c.reduces())
    }
}

fn spatial_summary(k: usize) -> &'static str {
    match k {
        0 => "u = 0 on Γ_x",
        1 => "n × u = 0 on Γ_x",
        2 => "u · n = 0 on Γ_x",
        _ => "not applicable",
    }
}

fn field_components(field: &SpatialField) -> Vec<PolyField> {
    match field {
        SpatialField::Scalar(u) => vec![u.clone()],
        SpatialField::Vector(u) => u.to_vec(),
    }
}

/// Lists every basis of the trace's degree; `classical` covers the rows
/// starting at `offset` and all other rows are expected to vanish.
fn rows_of(form: &KForm, offset: usize, classical: Vec<PolyField>) -> Vec<ConditionRow> {
    table_rows(form.degree())
        .iter()
        .enumerate()
        .map(|(i, vars)| ConditionRow {
            basis: display_label(vars),
            computed: display_component(form, vars),
            classical: i
                .checked_sub(offset)
                .and_then(|j| classical.get(j).cloned())
                .unwrap_or_else(PolyField::zero),
        })
        .collect()
}

/// Reduces the lateral, initial and terminal conditions for the solution form
/// built from `u` (initial data `u_t0`) and pairs every trace component with
/// the classical quantity it encodes.
pub fn boundary_report(
    k: usize,
    u: &SpatialField,
    u_t0: &SpatialField,
    m: &MaterialParams,
    geometry: &BoundaryGeometry,
) -> Result<BoundaryReport, ConvDiffError> {
    if k > 3 {
        return Err(FormError::DegreeOutOfRange(k).into());
    }
    let w = build_solution_form(k, u)?;
    let w0 = build_solution_form(k, u_t0)?;
    let comps = field_components(u);
    let comps0 = field_components(u_t0);
    let n = &geometry.normal;

    let lateral = wedge_trace(&NormalForm::SpatialX(n.clone()), &w).expect("k <= 3");
    let classical = match (k, u) {
        (0, SpatialField::Scalar(s)) => vc::mul(s, n).to_vec(),
        (1, SpatialField::Vector(v)) => vc::cross(n, v).to_vec(),
        (2, SpatialField::Vector(v)) => vec![vc::dot(n, v)],
        _ => Vec::new(),
    };
    let spatial = ReducedCondition {
        name: "x-BC",
        summary: spatial_summary(k),
        applicable: k < 3,
        rows: rows_of(&lateral, 0, classical),
    };

    let start = NormalForm::InitialTime(geometry.t0.clone());
    let trace = &wedge_trace(&start, &w).expect("k <= 3") - &wedge_trace(&start, &w0).expect("k <= 3");
    let offset = table_rows(k + 1).len() - comps.len();
    let jump = comps
        .iter()
        .zip(&comps0)
        .map(|(a, b)| (a - b).restrict(Var::T, &geometry.t0))
        .collect();
    let initial = ReducedCondition {
        name: "t0-BC",
        summary: "u(x,t0) = u_t0(x) on Γ_t0",
        applicable: true,
        rows: rows_of(&trace, offset, jump),
    };

    let terminal_form = artificial_bc(&w, m, &geometry.t_final).expect("k <= 3");
    let velocity = comps
        .iter()
        .map(|c| c.partial(Var::T).scale(m.epsilon()).restrict(Var::T, &geometry.t_final))
        .collect();
    let terminal = ReducedCondition {
        name: "ε-BC",
        summary: "ε u_t(x,T) = 0 on Γ_T",
        applicable: true,
        rows: rows_of(&terminal_form, 0, velocity),
    };

    Ok(BoundaryReport {
        degree: k,
        spatial,
        initial,
        terminal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{integer, rational};
    use crate::tables::oriented_form;
    use Var::{T, X, Y, Z};

    fn p(s: &str) -> PolyField {
        s.parse().unwrap()
    }

    fn params() -> MaterialParams {
        MaterialParams::diffusive(integer(2), rational(1, 3)).unwrap()
    }

    fn geometry() -> BoundaryGeometry {
        BoundaryGeometry {
            normal: [p("x"), p("y^2"), p("-1")],
            t0: integer(0),
            t_final: integer(2),
        }
    }

    #[test]
    fn normals() {
        let dt = KForm::basis(BasisForm::differential(T));
        assert_eq!(NormalForm::InitialTime(integer(0)).form(), -&dt);
        assert_eq!(NormalForm::FinalTime(integer(1)).form(), dt);
    }

    #[test]
    fn lateral_traces() {
        let n = NormalForm::SpatialX([p("2"), p("2"), p("2")]);
        let u0 = KForm::scalar(p("x*t"));
        let expected = &(&oriented_form(&[X], p("2*x*t")) + &oriented_form(&[Y], p("2*x*t")))
            + &oriented_form(&[Z], p("2*x*t"));
        assert_eq!(wedge_trace(&n, &u0).unwrap(), expected);

        let u3 = oriented_form(&[X, Y, Z], p("x"));
        assert!(wedge_trace(&n, &u3).unwrap().is_zero());
    }

    #[test]
    fn initial_trace_of_scalar() {
        let start = NormalForm::InitialTime(integer(1));
        let u = KForm::scalar(p("x + t^2"));
        assert_eq!(wedge_trace(&start, &u).unwrap(), oriented_form(&[T], p("-x - 1")));
    }

    #[test]
    fn artificial_bc_examples() {
        let m = params();
        let t_final = integer(2);
        assert_eq!(
            artificial_bc(&KForm::scalar(p("t^2")), &m, &t_final).unwrap(),
            KForm::scalar(p("-4/3"))
        );
        let u1 = oriented_form(&[X], p("t"));
        assert_eq!(artificial_bc(&u1, &m, &t_final).unwrap(), oriented_form(&[X], p("-1/3")));
        let u3 = oriented_form(&[X, Y, Z], p("x"));
        assert!(artificial_bc(&u3, &m, &t_final).unwrap().is_zero());
        // d(u dx∧dy∧dz) = −u_t dx∧dy∧dz∧dt, hence −ε u_t on the terminal slice
        let u3 = oriented_form(&[X, Y, Z], p("t*y"));
        assert_eq!(artificial_bc(&u3, &m, &t_final).unwrap(), oriented_form(&[X, Y, Z], p("-1/3*y")));
    }

    #[test]
    fn reports_reduce_for_every_degree() {
        let m = params();
        let scalar = SpatialField::Scalar(p("x*y*t + z^2*t^2"));
        let scalar0 = SpatialField::Scalar(p("x*y"));
        let vector = SpatialField::Vector([p("x*t"), p("y^2 - t"), p("z*x*t^3")]);
        let vector0 = SpatialField::Vector([p("x"), p("y"), p("0")]);
        let cases = [(0, &scalar, &scalar0), (1, &vector, &vector0), (2, &vector, &vector0), (3, &scalar, &scalar0)];
        let mut orientations = Vec::new();
        for (k, u, u0) in cases {
            let r = boundary_report(k, u, u0, &m, &geometry()).unwrap();
            assert!(r.all_reduce(), "k={k}: {r:?}");
            orientations.push([r.spatial.orientation(), r.initial.orientation(), r.terminal.orientation()]);
        }
        // initial traces: −u dt, +u dx∧dt, −u dy∧dz∧dt, +u dx∧dy∧dz∧dt
        let initial: Vec<_> = orientations.iter().map(|o| o[1]).collect();
        assert_eq!(initial, vec![Some(-1), Some(1), Some(-1), Some(1)]);
        let terminal: Vec<_> = orientations.iter().map(|o| o[2]).collect();
        assert_eq!(terminal, vec![Some(-1); 4]);
        let spatial: Vec<_> = orientations.iter().map(|o| o[0]).collect();
        assert_eq!(spatial[..3], [Some(1); 3]);
    }

    #[test]
    fn three_form_spatial_condition_not_applicable() {
        let u = SpatialField::Scalar(p("x*t"));
        let r = boundary_report(3, &u, &u, &params(), &geometry()).unwrap();
        assert!(!r.spatial.applicable);
        assert_eq!(r.spatial.summary, "not applicable");
        assert!(r.spatial.rows.iter().all(|row| row.computed.is_zero()));
    }

    #[test]
    fn double_contraction_vanishes() {
        for b in BasisForm::all().filter(|b| b.degree() >= 2) {
            let w: KForm = KForm::basis(b);
            let once = interior_product_nt(&w).unwrap();
            assert!(interior_product_nt(&once).unwrap().is_zero());
        }
    }
}
