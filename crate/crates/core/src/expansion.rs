//! Component-wise expansion of the unified operator for forms built from
//! spatial fields, compared cell by cell with classical vector calculus.

use std::fmt;

use crate::basis::BasisForm;
use crate::convdiff::operator_pieces;
use crate::error::ConvDiffError;
use crate::form::KForm;
use crate::material::MaterialParams;
use crate::poly::{PolyField, Var};
use crate::tables::{display_label, oriented_form};
use crate::vector_calculus::{self as vc, Vector3};

use Var::{T, X, Y, Z};

/// The spatial data a solution form is built from: a scalar for 0- and
/// 3-forms, a vector for 1- and 2-forms. Every dt-coefficient is zero.
#[derive(Clone, Debug, PartialEq)]
pub enum SpatialField {
    Scalar(PolyField),
    Vector(Vector3),
}

/// Display-ordered basis of each degree. The first rows are the dt-free
/// ones; the remaining rows form the dt-block.
pub fn table_rows(k: usize) -> &'static [&'static [Var]] {
    match k {
        0 => &[&[]],
        1 => &[&[X], &[Y], &[Z], &[T]],
        2 => &[&[Y, Z], &[Z, X], &[X, Y], &[X, T], &[Y, T], &[Z, T]],
        3 => &[&[X, Y, Z], &[Y, Z, T], &[Z, X, T], &[X, Y, T]],
        4 => &[&[X, Y, Z, T]],
        _ => panic!("no {k}-forms in four dimensions"),
    }
}

/// Coefficient of the display-ordered basis `vars` in `w`.
pub fn display_component(w: &KForm, vars: &[Var]) -> PolyField {
    let (sign, basis) = BasisForm::from_vars(vars).expect("distinct differentials");
    let c = w.component(basis);
    if sign < 0 {
        -c
    } else {
        c
    }
}

/// `u dx + …`, `u₁ dy∧dz + u₂ dz∧dx + u₃ dx∧dy`, `u dx∧dy∧dz`, or the zero
/// 4-form. Dt-coefficients are zero by construction.
pub fn build_solution_form(k: usize, field: &SpatialField) -> Result<KForm, ConvDiffError> {
    let spatial_rows = &table_rows(k)[..spatial_row_count(k)];
    let shape = |expected| ConvDiffError::FieldShape { degree: k, expected };
    let mut out = KForm::zero(k);
    match (k, field) {
        (0 | 3, SpatialField::Scalar(u)) => out = &out + &oriented_form(spatial_rows[0], u.clone()),
        (1 | 2, SpatialField::Vector(u)) => {
            for (vars, c) in spatial_rows.iter().zip(u) {
                out = &out + &oriented_form(vars, c.clone());
            }
        }
        (4, _) => {}
        (0 | 3, _) => return Err(shape("scalar")),
        _ => return Err(shape("vector")),
    }
    Ok(out)
}

/// Inverse of [`build_solution_form`]; rejects forms with dt components.
pub fn spatial_field_of(w: &KForm) -> Result<SpatialField, ConvDiffError> {
    if let Some((b, c)) = w.temporal_part().components().next() {
        return Err(ConvDiffError::MalformedSolution {
            basis: b.to_string(),
            coefficient: c.clone(),
        });
    }
    let k = w.degree();
    let rows = &table_rows(k)[..spatial_row_count(k)];
    Ok(match k {
        1 | 2 => SpatialField::Vector([0, 1, 2].map(|i| display_component(w, rows[i]))),
        4 => SpatialField::Scalar(PolyField::zero()),
        _ => SpatialField::Scalar(display_component(w, rows[0])),
    })
}

fn spatial_row_count(k: usize) -> usize {
    match k {
        0 | 3 => 1,
        1 | 2 => 3,
        _ => 0,
    }
}

/// Operator piece, i.e. column of an expansion table.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Piece {
    Diffusion,
    Convection,
    Exact,
    Total,
}

impl Piece {
    pub const ALL: [Piece; 4] = [Piece::Diffusion, Piece::Convection, Piece::Exact, Piece::Total];

    pub fn label(self) -> &'static str {
        match self {
            Piece::Diffusion => "δ_1α d u",
            Piece::Convection => "δ_1α (b1∧u)",
            Piece::Exact => "d δ_α1 u",
            Piece::Total => "total",
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub computed: PolyField,
    pub expected: PolyField,
}

impl Cell {
    pub fn residual(&self) -> PolyField {
        &self.computed - &self.expected
    }

    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionRow {
    pub basis: String,
    /// Indexed in [`Piece::ALL`] order.
    pub cells: [Cell; 4],
}

impl ExpansionRow {
    pub fn cell(&self, piece: Piece) -> &Cell {
        &self.cells[Piece::ALL.iter().position(|p| *p == piece).expect("listed")]
    }
}

/// Per-basis, per-piece comparison of the operator with the classical
/// expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub degree: usize,
    pub rows: Vec<ExpansionRow>,
}

impl ExpansionReport {
    pub fn is_exact(&self) -> bool {
        self.rows.iter().all(|r| r.cells.iter().all(Cell::matches))
    }

    /// `(basis, piece)` of every mismatching cell.
    pub fn mismatches(&self) -> Vec<(String, Piece)> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (piece, cell) in Piece::ALL.iter().zip(&row.cells) {
                if !cell.matches() {
                    out.push((row.basis.clone(), *piece));
                }
            }
        }
        out
    }
}

/// Classical `[diffusion, convection, exact]` expressions for each row of
/// [`table_rows`], written with grad/div/curl only.
pub fn classical_cells(k: usize, field: &SpatialField, m: &MaterialParams) -> Vec<[PolyField; 3]> {
    let alpha = m.alpha_field();
    let eps = m.epsilon();
    let beta = m.beta();
    let zero = PolyField::zero;
    let tt = |f: &PolyField| f.partial(T).partial(T);
    match (k, field) {
        (0, SpatialField::Scalar(u)) => vec![[
            &(-&tt(u).scale(eps)) - &vc::div(&vc::mul(&alpha, &vc::grad(u))),
            &u.partial(T) - &vc::div(&vc::mul(u, beta)),
            zero(),
        ]],
        (1, SpatialField::Vector(u)) => {
            let div_u = vc::div(u);
            let diffusion = vc::curl(&vc::mul(&alpha, &vc::curl(u)));
            let convection = vc::curl(&vc::cross(beta, u));
            let exact = vc::grad(&div_u.scale(eps));
            let mut rows: Vec<[PolyField; 3]> = (0..3)
                .map(|i| {
                    [
                        &(-&tt(&u[i]).scale(eps)) + &diffusion[i],
                        &u[i].partial(T) + &convection[i],
                        -&exact[i],
                    ]
                })
                .collect();
            rows.push([
                vc::div(&vc::dt(u)).scale(eps),
                -&div_u,
                -&div_u.scale(eps).partial(T),
            ]);
            rows
        }
        (2, SpatialField::Vector(u)) => {
            let div_u = vc::div(u);
            let curl_u = vc::curl(u);
            let diffusion = vc::grad(&(&alpha * &div_u));
            let convection = vc::grad(&vc::dot(beta, u));
            let exact = vc::curl(&vc::scale(&curl_u, eps));
            let mut rows: Vec<[PolyField; 3]> = (0..3)
                .map(|i| {
                    [
                        &(-&tt(&u[i]).scale(eps)) - &diffusion[i],
                        &u[i].partial(T) - &convection[i],
                        exact[i].clone(),
                    ]
                })
                .collect();
            let curl_ut = vc::curl(&vc::dt(u));
            for i in 0..3 {
                rows.push([
                    curl_ut[i].scale(eps),
                    -&curl_u[i],
                    -&curl_u[i].scale(eps).partial(T),
                ]);
            }
            rows
        }
        (3, SpatialField::Scalar(u)) => {
            let mut rows = vec![[
                -&tt(u).scale(eps),
                u.partial(T),
                -&vc::laplacian(u).scale(eps),
            ]];
            for g in vc::grad(u) {
                rows.push([
                    g.partial(T).scale(eps),
                    -&g,
                    -&g.scale(eps).partial(T),
                ]);
            }
            rows
        }
        (4, _) => vec![[zero(), zero(), zero()]],
        _ => panic!("field shape does not fit a {k}-form"),
    }
}

/// Compares operator pieces with per-row reference cells.
pub fn compare_pieces(
    k: usize,
    pieces: &crate::convdiff::OperatorPieces,
    reference: &[[PolyField; 3]],
) -> ExpansionReport {
    let rows = table_rows(k)
        .iter()
        .zip(reference)
        .map(|(vars, expected)| {
            let total = &(&expected[0] + &expected[1]) + &expected[2];
            let forms = [&pieces.diffusion, &pieces.convection, &pieces.exact, &pieces.total];
            let expected = [expected[0].clone(), expected[1].clone(), expected[2].clone(), total];
            let cells = [0, 1, 2, 3].map(|i| Cell {
                computed: display_component(forms[i], vars),
                expected: expected[i].clone(),
            });
            ExpansionRow {
                basis: display_label(vars),
                cells,
            }
        })
        .collect();
    ExpansionReport { degree: k, rows }
}

/// Expands the unified operator on the solution form built from `field`.
pub fn expand_componentwise(
    k: usize,
    field: &SpatialField,
    m: &MaterialParams,
) -> Result<ExpansionReport, ConvDiffError> {
    let w = build_solution_form(k, field)?;
    let pieces = operator_pieces(&w, m)?;
    Ok(compare_pieces(k, &pieces, &classical_cells(k, field, m)))
}

/// As [`expand_componentwise`], starting from a form.
pub fn expand_form(w: &KForm, m: &MaterialParams) -> Result<ExpansionReport, ConvDiffError> {
    let field = spatial_field_of(w)?;
    expand_componentwise(w.degree(), &field, m)
}

/// The dt-block of the unified operator output.
pub fn emergent_constraint(
    k: usize,
    field: &SpatialField,
    m: &MaterialParams,
) -> Result<KForm, ConvDiffError> {
    let w = build_solution_form(k, field)?;
    Ok(operator_pieces(&w, m)?.total.temporal_part())
}

/// `−∇·u dt` (k=1), `−(∇×u)ᵢ dxᵢ∧dt` (k=2), `−∂ᵢu` on the cyclic
/// `dxʲ∧dxᵏ∧dt` (k=3); zero otherwise.
pub fn constraint_reference(k: usize, field: &SpatialField) -> KForm {
    let rows = table_rows(k);
    let values: Vec<PolyField> = match (k, field) {
        (1, SpatialField::Vector(u)) => vec![-&vc::div(u)],
        (2, SpatialField::Vector(u)) => vc::neg(&vc::curl(u)).to_vec(),
        (3, SpatialField::Scalar(u)) => vc::neg(&vc::grad(u)).to_vec(),
        _ => Vec::new(),
    };
    let mut out = KForm::zero(k);
    for (vars, c) in rows[rows.len() - values.len()..].iter().zip(values) {
        out = &out + &oriented_form(vars, c);
    }
    out
}
