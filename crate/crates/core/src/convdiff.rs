//! The space-time convection-diffusion operator
//! `(δ_{1α} J + d δ_{α1}) u` with `J u = d u + b₁ ∧ u`, its potential-based
//! exponentially fitted form, and the Hodge Laplacian it extends.

use num_traits::Zero;

use crate::basis::BasisForm;
use crate::coefficient::Coefficient;
use crate::error::ConvDiffError;
use crate::exp_poly::ExpPolyField;
use crate::form::{exterior_derivative, wedge, KForm};
use crate::hodge::{codifferential_1a, codifferential_a1, hodge_star};
use crate::material::MaterialParams;
use crate::poly::{PolyField, Rational, Var};

/// The space-time convection 1-form `b₁ = α⁻¹β₁dx + α⁻¹β₂dy + α⁻¹β₃dz − ε⁻¹dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvectionForm {
    b1: KForm,
}

impl ConvectionForm {
    /// Requires a spatially constant α.
    pub fn build(m: &MaterialParams) -> Result<Self, ConvDiffError> {
        let inv_alpha = m.constant_alpha()?.recip();
        let inv_eps = m.epsilon().recip();
        let mut parts = Vec::with_capacity(4);
        for (v, beta) in Var::SPATIAL.into_iter().zip(m.beta()) {
            parts.push((BasisForm::differential(v), beta.scale(&inv_alpha)));
        }
        parts.push((BasisForm::differential(Var::T), PolyField::constant(-inv_eps)));
        let b1 = KForm::try_from_components(1, parts)?;
        Ok(Self { b1 })
    }

    pub fn form(&self) -> &KForm {
        &self.b1
    }

    /// Whether `d b₁ = 0`, i.e. whether a potential exists.
    pub fn is_closed(&self) -> bool {
        exterior_derivative(&self.b1).is_some_and(|d| d.is_zero())
    }
}

/// `J_k w = d w + b₁ ∧ w`. Returns `None` for 4-forms, where both terms
/// vanish for lack of a 5-form.
pub fn flux(w: &KForm, b: &ConvectionForm) -> Option<KForm> {
    let dw = exterior_derivative(w)?;
    let bw = wedge(b.form(), w)?;
    Some(&dw + &bw)
}

/// `Δ_α w = δ_{1α} d w + d δ_{α1} w`; the terms without a representable
/// degree (`d` of a 4-form, `δ` of a 0-form) are zero.
pub fn hodge_laplacian<C: Coefficient>(w: &KForm<C>, m: &MaterialParams) -> KForm<C> {
    let mut out = KForm::zero(w.degree());
    if let Some(dw) = exterior_derivative(w) {
        out = &out + &codifferential_1a(&dw, m).form;
    }
    if let Some(grad_part) = exact_piece(w, m) {
        out = &out + &grad_part;
    }
    out
}

fn exact_piece<C: Coefficient>(w: &KForm<C>, m: &MaterialParams) -> Option<KForm<C>> {
    let delta = codifferential_a1(w, m);
    if delta.degree_underflow {
        return None;
    }
    exterior_derivative(&delta.form)
}

/// The three pieces of the unified operator and their sum.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPieces {
    /// `δ_{1α} d w`
    pub diffusion: KForm,
    /// `δ_{1α} (b₁ ∧ w)`
    pub convection: KForm,
    /// `d δ_{α1} w`
    pub exact: KForm,
    pub total: KForm,
}

/// Evaluates `δ_{1α}(d w + b₁ ∧ w) + d δ_{α1} w` piece by piece.
///
/// With constant α this is the literal composition of the form operators.
/// With a spatial α profile, the α⁻¹ in `b₁` cancels against the α of `★_α`
/// on every dt-free component of `β♭ ∧ w`, so the convection piece stays
/// polynomial as long as `β♭ ∧ w` has no dt components (always true for
/// forms built from spatial fields); otherwise the profile is rejected.
pub fn operator_pieces(w: &KForm, m: &MaterialParams) -> Result<OperatorPieces, ConvDiffError> {
    let k = w.degree();
    let diffusion = match exterior_derivative(w) {
        Some(dw) => codifferential_1a(&dw, m).form,
        None => KForm::zero(k),
    };
    let convection = if k == 4 {
        KForm::zero(4)
    } else if m.alpha_profile().is_none() {
        let b = ConvectionForm::build(m)?;
        let bw = wedge(b.form(), w).expect("k <= 3");
        codifferential_1a(&bw, m).form
    } else {
        let star = convection_star(w, m)?;
        let d = exterior_derivative(&star).expect("star of a (k+1)-form with k <= 3");
        -&hodge_star(&d)
    };
    let exact = exact_piece(w, m).unwrap_or_else(|| KForm::zero(k));
    let total = &(&diffusion + &convection) + &exact;
    Ok(OperatorPieces {
        diffusion,
        convection,
        exact,
        total,
    })
}

/// `★_α(b₁ ∧ w)` without dividing by α where it cancels.
fn convection_star(w: &KForm, m: &MaterialParams) -> Result<KForm, ConvDiffError> {
    let beta_flat = KForm::try_from_components(
        1,
        Var::SPATIAL
            .into_iter()
            .zip(m.beta())
            .map(|(v, b)| (BasisForm::differential(v), b.clone())),
    )?;
    let bw = wedge(&beta_flat, w).expect("k <= 3");
    let dt: KForm = KForm::basis(BasisForm::differential(Var::T));
    let tw = wedge(&dt, w).expect("k <= 3");
    let mut out = &hodge_star(&bw.spatial_part()) - &hodge_star(&tw);
    let temporal = bw.temporal_part();
    if !temporal.is_zero() {
        let ratio = m.epsilon() / m.constant_alpha()?;
        out = &out + &hodge_star(&temporal).scale(&ratio);
    }
    Ok(out)
}

/// Left-hand side of the unified convection-diffusion equation.
pub fn unified_operator(w: &KForm, m: &MaterialParams) -> Result<KForm, ConvDiffError> {
    Ok(operator_pieces(w, m)?.total)
}

/// A space-time potential `ψ₀` with `d ψ₀ = b₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    psi0: PolyField,
}

impl Potential {
    pub fn psi0(&self) -> &PolyField {
        &self.psi0
    }

    /// The same potential shifted by a constant.
    pub fn with_gauge(&self, shift: Rational) -> Self {
        Self {
            psi0: &self.psi0 + &PolyField::constant(shift),
        }
    }
}

/// Integrates a closed `b₁` along the coordinate axes from the origin, so
/// that `ψ₀(0, 0, 0, 0) = 0`.
pub fn make_potential(b: &ConvectionForm) -> Result<Potential, ConvDiffError> {
    let db = exterior_derivative(b.form()).expect("b1 is a 1-form");
    if !db.is_zero() {
        let components = db
            .components()
            .map(|(basis, c)| (basis.to_string(), c.clone()))
            .collect();
        return Err(ConvDiffError::NoPotential { components });
    }
    let zero = Rational::zero();
    let mut psi0 = PolyField::zero();
    for (i, v) in Var::ALL.into_iter().enumerate() {
        // component along v, restricted to the slice where later coordinates vanish
        let mut c = b.form().component(BasisForm::differential(v));
        for later in &Var::ALL[i + 1..] {
            c = c.restrict(*later, &zero);
        }
        psi0 += &c.antiderivative(v);
    }
    let check = exterior_derivative(&KForm::scalar(psi0.clone())).expect("0-form");
    debug_assert_eq!(&check, b.form());
    Ok(Potential { psi0 })
}

/// `e^{−ψ₀} d(e^{ψ₀} w)`, computed with exponentially weighted coefficients
/// and reduced back to polynomials once the weights cancel.
pub fn exp_fitted_flux(w: &KForm, p: &Potential) -> Result<KForm, ConvDiffError> {
    let grow = ExpPolyField::exp(p.psi0().clone());
    let decay = ExpPolyField::exp(-p.psi0());
    let weighted = w.to_exp().mul_field(&grow);
    let d = exterior_derivative(&weighted).ok_or(crate::error::FormError::DegreeOutOfRange(5))?;
    d.mul_field(&decay).to_poly().ok_or(ConvDiffError::Unreduced)
}
