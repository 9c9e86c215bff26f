//! Exponentially weighted polynomials `Σ_j exp(p_j)·q_j`.
//!
//! A single weight `exp(p)·q` is the common case; sums of distinct weights
//! are kept as separate terms so the class is closed under addition as well
//! as multiplication and differentiation. Weights differing by a nonzero
//! constant are not merged, so equality is structural in that case.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use crate::poly::{PolyField, Rational, Var};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpPolyField {
    /// weight polynomial -> amplitude polynomial, no zero amplitudes stored
    terms: BTreeMap<PolyField, PolyField>,
}

impl ExpPolyField {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `exp(weight) * amplitude`.
    pub fn new(weight: PolyField, amplitude: PolyField) -> Self {
        let mut out = Self::zero();
        out.add_term(weight, amplitude);
        out
    }

    /// `exp(weight)`.
    pub fn exp(weight: PolyField) -> Self {
        Self::new(weight, PolyField::one())
    }

    fn add_term(&mut self, weight: PolyField, amplitude: PolyField) {
        if amplitude.is_zero() {
            return;
        }
        match self.terms.get_mut(&weight) {
            Some(slot) => {
                *slot += &amplitude;
                if slot.is_zero() {
                    self.terms.remove(&weight);
                }
            }
            None => {
                self.terms.insert(weight, amplitude);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyField, &PolyField)> {
        self.terms.iter()
    }

    /// The `(weight, amplitude)` pair when exactly one weight is present.
    pub fn single(&self) -> Option<(&PolyField, &PolyField)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Plain polynomial value when every weight is zero (or the field is zero).
    pub fn to_poly(&self) -> Option<PolyField> {
        match self.terms.len() {
            0 => Some(PolyField::zero()),
            1 => self.terms.get(&PolyField::zero()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a.scale(factor));
        }
        out
    }

    /// `∂(e^p q) = e^p (q ∂p + ∂q)`.
    pub fn partial(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            let amp = &(a * &w.partial(v)) + &a.partial(v);
            out.add_term(w.clone(), amp);
        }
        out
    }

    pub fn restrict(&self, v: Var, value: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, a) in &self.terms {
            out.add_term(w.restrict(v, value), a.restrict(v, value));
        }
        out
    }
}

impl From<PolyField> for ExpPolyField {
    fn from(p: PolyField) -> Self {
        Self::new(PolyField::zero(), p)
    }
}

impl<'a> Add<&'a ExpPolyField> for &'a ExpPolyField {
    type Output = ExpPolyField;
    fn add(self, rhs: &ExpPolyField) -> ExpPolyField {
        let mut out = self.clone();
        for (w, a) in &rhs.terms {
            out.add_term(w.clone(), a.clone());
        }
        out
    }
}

impl<'a> Mul<&'a ExpPolyField> for &'a ExpPolyField {
    type Output = ExpPolyField;
    fn mul(self, rhs: &ExpPolyField) -> ExpPolyField {
        let mut out = ExpPolyField::zero();
        for (wa, aa) in &self.terms {
            for (wb, ab) in &rhs.terms {
                out.add_term(wa + wb, aa * ab);
            }
        }
        out
    }
}

impl Neg for &ExpPolyField {
    type Output = ExpPolyField;
    fn neg(self) -> ExpPolyField {
        ExpPolyField {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), -a)).collect(),
        }
    }
}

impl fmt::Display for ExpPolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, a)| {
                if w.is_zero() {
                    format!("({a})")
                } else {
                    format!("exp({w})*({a})")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyField {
        s.parse().unwrap()
    }

    #[test]
    fn derivative_stays_in_class() {
        // d/dx (e^{x^2} * x) = e^{x^2} (2x^2 + 1)
        let f = ExpPolyField::new(p("x^2"), p("x"));
        assert_eq!(f.partial(Var::X), ExpPolyField::new(p("x^2"), p("2*x^2 + 1")));
        assert!(f.partial(Var::T).is_zero());
    }

    #[test]
    fn zero_weight_is_plain_polynomial() {
        let q = p("x*y - 3*t");
        let f = ExpPolyField::from(q.clone());
        for v in Var::ALL {
            assert_eq!(f.partial(v).to_poly(), Some(q.partial(v)));
        }
        assert_eq!((&f * &f).to_poly(), Some(&q * &q));
    }

    #[test]
    fn opposite_weights_cancel() {
        let psi = p("2*x - 2*t");
        let prod = &ExpPolyField::exp(-&psi) * &ExpPolyField::new(psi.clone(), p("y"));
        assert_eq!(prod.to_poly(), Some(p("y")));
    }

    #[test]
    fn distinct_weights_do_not_reduce() {
        let f = &ExpPolyField::exp(p("x")) + &ExpPolyField::exp(p("t"));
        assert!(f.to_poly().is_none());
        assert!(f.single().is_none());
        let g = &f + &(-&f);
        assert!(g.is_zero());
    }
}
