//! Differential k-forms on 4D space-time and the degree-changing operators
//! that do not depend on a metric: wedge, exterior derivative and the
//! contraction with the terminal normal `dt`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::basis::BasisForm;
use crate::coefficient::Coefficient;
use crate::error::FormError;
use crate::exp_poly::ExpPolyField;
use crate::poly::{PolyField, Rational, Var};

/// Homogeneous k-form: a finite map from degree-k basis forms to
/// coefficients. Absent entries are zero and zero coefficients are never
/// stored.
#[derive(Clone, PartialEq)]
pub struct KForm<C = PolyField> {
    degree: usize,
    components: BTreeMap<BasisForm, C>,
}

impl<C: Coefficient> KForm<C> {
    /// Panics if `degree > 4`.
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= 4, "no {degree}-forms in four dimensions");
        Self {
            degree,
            components: BTreeMap::new(),
        }
    }

    pub fn scalar(c: C) -> Self {
        Self::from_component(BasisForm::ONE, c)
    }

    pub fn from_component(b: BasisForm, c: C) -> Self {
        let mut out = Self::zero(b.degree());
        out.accumulate(b, c);
        out
    }

    pub fn basis(b: BasisForm) -> Self {
        Self::from_component(b, C::from(PolyField::one()))
    }

    pub fn try_from_components<I>(degree: usize, components: I) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (BasisForm, C)>,
    {
        if degree > 4 {
            return Err(FormError::DegreeOutOfRange(degree));
        }
        let mut out = Self::zero(degree);
        for (b, c) in components {
            if b.degree() != degree {
                return Err(FormError::DegreeMismatch {
                    expected: degree,
                    basis: b.to_string(),
                });
            }
            out.accumulate(b, c);
        }
        Ok(out)
    }

    fn accumulate(&mut self, b: BasisForm, c: C) {
        debug_assert_eq!(b.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.components.get_mut(&b) {
            Some(slot) => {
                *slot = slot.sum(&c);
                if slot.is_zero() {
                    self.components.remove(&b);
                }
            }
            None => {
                self.components.insert(b, c);
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, b: BasisForm) -> Option<&C> {
        self.components.get(&b)
    }

    /// Coefficient of `b`, zero when absent.
    pub fn component(&self, b: BasisForm) -> C {
        self.components.get(&b).cloned().unwrap_or_else(C::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&BasisForm, &C)> {
        self.components.iter()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map(|c| c.scale(factor))
    }

    /// Pointwise product with a 0-form coefficient.
    pub fn mul_field(&self, f: &C) -> Self {
        self.map(|c| f.product(c))
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(self.degree);
        for (b, c) in &self.components {
            out.accumulate(*b, f(c));
        }
        out
    }

    pub fn convert<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> KForm<D> {
        let mut out = KForm::zero(self.degree);
        for (b, c) in &self.components {
            out.accumulate(*b, f(c));
        }
        out
    }

    /// Substitutes `v = value` in every coefficient (restriction to a slice).
    pub fn restrict(&self, v: Var, value: &Rational) -> Self {
        self.map(|c| c.restrict(v, value))
    }

    /// The part whose basis forms contain `dt`.
    pub fn temporal_part(&self) -> Self {
        self.filter(|b| b.contains(Var::T))
    }

    /// The part whose basis forms are free of `dt`.
    pub fn spatial_part(&self) -> Self {
        self.filter(|b| !b.contains(Var::T))
    }

    fn filter(&self, keep: impl Fn(BasisForm) -> bool) -> Self {
        Self {
            degree: self.degree,
            components: self
                .components
                .iter()
                .filter(|(b, _)| keep(**b))
                .map(|(b, c)| (*b, c.clone()))
                .collect(),
        }
    }
}

impl KForm<PolyField> {
    pub fn to_exp(&self) -> KForm<ExpPolyField> {
        self.convert(|c| ExpPolyField::from(c.clone()))
    }
}

impl KForm<ExpPolyField> {
    /// Back to polynomial coefficients when every exponential weight has cancelled.
    pub fn to_poly(&self) -> Option<KForm<PolyField>> {
        let mut out = KForm::zero(self.degree);
        for (b, c) in &self.components {
            out.accumulate(*b, c.to_poly()?);
        }
        Some(out)
    }
}

impl<'a, C: Coefficient> Add<&'a KForm<C>> for &'a KForm<C> {
    type Output = KForm<C>;

    /// Panics if the degrees differ.
    fn add(self, rhs: &KForm<C>) -> KForm<C> {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (b, c) in &rhs.components {
            out.accumulate(*b, c.clone());
        }
        out
    }
}

impl<'a, C: Coefficient> Sub<&'a KForm<C>> for &'a KForm<C> {
    type Output = KForm<C>;

    fn sub(self, rhs: &KForm<C>) -> KForm<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Neg for &KForm<C> {
    type Output = KForm<C>;
    fn neg(self) -> KForm<C> {
        self.map(|c| c.negate())
    }
}

impl<C: Coefficient> fmt::Display for KForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|(b, c)| {
                if b.degree() == 0 {
                    format!("({c})")
                } else {
                    format!("({c})·{b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Coefficient> fmt::Debug for KForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{}>[{}]", self.degree, self)
    }
}

/// `a ∧ b`. Returns `None` when `deg a + deg b > 4`, where the product is
/// identically zero and has no representable degree.
pub fn wedge<C: Coefficient>(a: &KForm<C>, b: &KForm<C>) -> Option<KForm<C>> {
    let degree = a.degree + b.degree;
    if degree > 4 {
        return None;
    }
    let mut out = KForm::zero(degree);
    for (ba, ca) in &a.components {
        for (bb, cb) in &b.components {
            if let Some((sign, basis)) = ba.wedge(*bb) {
                let c = ca.product(cb);
                out.accumulate(basis, if sign < 0 { c.negate() } else { c });
            }
        }
    }
    Some(out)
}

/// Exterior derivative `d_k`. Returns `None` for 4-forms (no 5-forms exist).
pub fn exterior_derivative<C: Coefficient>(w: &KForm<C>) -> Option<KForm<C>> {
    if w.degree == 4 {
        return None;
    }
    let mut out = KForm::zero(w.degree + 1);
    for (b, c) in &w.components {
        for v in Var::ALL {
            let Some((sign, basis)) = BasisForm::differential(v).wedge(*b) else {
                continue;
            };
            let dc = c.partial(v);
            out.accumulate(basis, if sign < 0 { dc.negate() } else { dc });
        }
    }
    Some(out)
}

/// Contraction with the terminal normal `n_T = dt`: moves `dt` to the last
/// slot (already its canonical position) and removes it; basis forms without
/// `dt` are annihilated. Returns `None` for 0-forms (degree −1).
pub fn interior_product_nt<C: Coefficient>(w: &KForm<C>) -> Option<KForm<C>> {
    if w.degree == 0 {
        return None;
    }
    let mut out = KForm::zero(w.degree - 1);
    for (b, c) in &w.components {
        if b.contains(Var::T) {
            out.accumulate(b.without(Var::T), c.clone());
        }
    }
    Some(out)
}
