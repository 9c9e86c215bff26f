//! Euclidean and diffusion-scaled Hodge stars and the two weighted
//! codifferentials built from them.

use crate::basis::BasisForm;
use crate::coefficient::Coefficient;
use crate::form::{exterior_derivative, KForm};
use crate::material::MaterialParams;
use crate::poly::{Rational, Var};

/// Euclidean Hodge star, signature `(+,+,+,+)`: `★e_I = sign(I, Iᶜ) e_{Iᶜ}`.
pub fn hodge_star<C: Coefficient>(w: &KForm<C>) -> KForm<C> {
    let components = w.components().map(|(b, c)| {
        let c = if b.hodge_sign() < 0 { c.negate() } else { c.clone() };
        (b.complement(), c)
    });
    KForm::try_from_components(4 - w.degree(), components)
        .expect("complements have the complementary degree")
}

/// Scaled star `★_α`: the Euclidean star with each coefficient multiplied by
/// α when the input basis form is free of `dt` and by ε when it contains `dt`.
/// A spatial α profile multiplies the coefficient before the star.
pub fn scaled_hodge_star<C: Coefficient>(w: &KForm<C>, m: &MaterialParams) -> KForm<C> {
    let alpha = C::from(m.alpha_field());
    let components = w.components().map(|(b, c)| {
        let weighted = if b.contains(Var::T) {
            c.scale(m.epsilon())
        } else {
            alpha.product(c)
        };
        let weighted = if b.hodge_sign() < 0 {
            weighted.negate()
        } else {
            weighted
        };
        (b.complement(), weighted)
    });
    KForm::try_from_components(4 - w.degree(), components)
        .expect("complements have the complementary degree")
}

/// Output of a codifferential. Below 0-forms the codifferential is taken to
/// be zero: `form` is then the zero 0-form and `degree_underflow` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct Codifferential<C: Coefficient> {
    pub form: KForm<C>,
    pub degree_underflow: bool,
}

impl<C: Coefficient> Codifferential<C> {
    fn underflow() -> Self {
        Self {
            form: KForm::zero(0),
            degree_underflow: true,
        }
    }

    fn of(form: KForm<C>) -> Self {
        Self {
            form,
            degree_underflow: false,
        }
    }
}

/// `δ_{1α} = −★ d ★_α`.
pub fn codifferential_1a<C: Coefficient>(w: &KForm<C>, m: &MaterialParams) -> Codifferential<C> {
    if w.degree() == 0 {
        return Codifferential::underflow();
    }
    let inner = scaled_hodge_star(w, m);
    let d = exterior_derivative(&inner).expect("star of a k-form with k >= 1 has degree <= 3");
    Codifferential::of(-&hodge_star(&d))
}

/// `δ_{α1} = −★_α d ★`.
pub fn codifferential_a1<C: Coefficient>(w: &KForm<C>, m: &MaterialParams) -> Codifferential<C> {
    if w.degree() == 0 {
        return Codifferential::underflow();
    }
    let inner = hodge_star(w);
    let d = exterior_derivative(&inner).expect("star of a k-form with k >= 1 has degree <= 3");
    Codifferential::of(-&scaled_hodge_star(&d, m))
}

/// Scalar by which `(−1)^{k(4−k)} ★★_α` acts on the basis form `b`.
pub fn double_star_factor(b: BasisForm, m: &MaterialParams) -> Rational {
    if b.contains(Var::T) {
        m.epsilon().clone()
    } else {
        m.alpha().clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{integer, rational, PolyField};

    fn p(s: &str) -> PolyField {
        s.parse().unwrap()
    }

    fn basis(vars: &[Var]) -> BasisForm {
        BasisForm::from_vars(vars).unwrap().1
    }

    fn params(alpha: Rational, eps: Rational) -> MaterialParams {
        MaterialParams::diffusive(alpha, eps).unwrap()
    }

    #[test]
    fn star_examples() {
        let dt: KForm = KForm::basis(BasisForm::differential(Var::T));
        let expected = KForm::from_component(basis(&[Var::X, Var::Y, Var::Z]), p("-1"));
        assert_eq!(hodge_star(&dt), expected);

        let dxdt: KForm = KForm::basis(basis(&[Var::X, Var::T]));
        assert_eq!(hodge_star(&dxdt), KForm::basis(basis(&[Var::Y, Var::Z])));

        let one: KForm = KForm::scalar(p("1"));
        assert_eq!(hodge_star(&one), KForm::basis(BasisForm::VOLUME));
    }

    #[test]
    fn scaled_star_examples() {
        let m = params(rational(3, 2), rational(1, 7));
        let dydz: KForm = KForm::basis(basis(&[Var::Y, Var::Z]));
        assert_eq!(
            scaled_hodge_star(&dydz, &m),
            KForm::from_component(basis(&[Var::X, Var::T]), PolyField::constant(rational(3, 2)))
        );
        let dydzdt: KForm = KForm::basis(basis(&[Var::Y, Var::Z, Var::T]));
        assert_eq!(
            scaled_hodge_star(&dydzdt, &m),
            KForm::from_component(BasisForm::differential(Var::X), PolyField::constant(rational(-1, 7)))
        );
        let vol: KForm = KForm::basis(BasisForm::VOLUME);
        assert_eq!(scaled_hodge_star(&vol, &m), KForm::scalar(PolyField::constant(rational(1, 7))));
    }

    #[test]
    fn laplacian_of_time_square() {
        // δ_{1α} d (t²) with ε = 2: -ε u_tt = -4
        let m = params(integer(1), integer(2));
        let u: KForm = KForm::scalar(p("t^2"));
        let du = exterior_derivative(&u).unwrap();
        let out = codifferential_1a(&du, &m);
        assert!(!out.degree_underflow);
        assert_eq!(out.form, KForm::scalar(p("-4")));
    }

    #[test]
    fn codifferential_of_spatial_one_form() {
        // δ_{1α}(x² dx) with α = ε = 1 is -∂x(x²) = -2x
        let m = params(integer(1), integer(1));
        let w = KForm::from_component(BasisForm::differential(Var::X), p("x^2"));
        assert_eq!(codifferential_1a(&w, &m).form, KForm::scalar(p("-2*x")));
    }

    #[test]
    fn codifferential_a1_is_weighted_divergence() {
        let m = params(integer(2), rational(1, 3));
        let u = &(&KForm::from_component(BasisForm::differential(Var::X), p("x*y"))
            + &KForm::from_component(BasisForm::differential(Var::Y), p("y^2*t")))
            + &KForm::from_component(BasisForm::differential(Var::Z), p("z*x"));
        // -ε (∂x u1 + ∂y u2 + ∂z u3) = -(1/3)(y + 2yt + x)
        let expected = KForm::scalar(p("-1/3*(y + 2*y*t + x)"));
        assert_eq!(codifferential_a1(&u, &m).form, expected);
    }

    #[test]
    fn zero_and_underflow() {
        let m = params(integer(1), integer(1));
        let z: KForm = KForm::zero(2);
        assert!(codifferential_a1(&z, &m).form.is_zero());
        let u: KForm = KForm::scalar(p("x"));
        let c = codifferential_1a(&u, &m);
        assert!(c.degree_underflow && c.form.is_zero() && c.form.degree() == 0);
        // constant coefficients are closed
        let k: KForm = KForm::from_component(basis(&[Var::Y, Var::T]), p("5"));
        assert!(codifferential_1a(&k, &m).form.is_zero());
    }

    #[test]
    fn spatial_profile_multiplies_before_star() {
        let m = params(integer(1), integer(1))
            .with_alpha_profile(p("1 + x^2"))
            .unwrap();
        let dx: KForm = KForm::basis(BasisForm::differential(Var::X));
        assert_eq!(
            scaled_hodge_star(&dx, &m),
            KForm::from_component(basis(&[Var::Y, Var::Z, Var::T]), p("1 + x^2"))
        );
    }
}
