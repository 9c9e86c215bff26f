use std::fmt;

use crate::exp_poly::ExpPolyField;
use crate::poly::{PolyField, Rational, Var};

/// Scalar coefficient class of a [`KForm`](crate::KForm): a commutative ring
/// closed under partial differentiation and restriction of one coordinate.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + From<PolyField>
{
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn sum(&self, rhs: &Self) -> Self;
    fn product(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scale(&self, factor: &Rational) -> Self;
    fn partial(&self, var: Var) -> Self;
    fn restrict(&self, var: Var, value: &Rational) -> Self;

    fn difference(&self, rhs: &Self) -> Self {
        self.sum(&rhs.negate())
    }
}

impl Coefficient for PolyField {
    fn zero() -> Self {
        PolyField::zero()
    }
    fn is_zero(&self) -> bool {
        PolyField::is_zero(self)
    }
    fn sum(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, factor: &Rational) -> Self {
        PolyField::scale(self, factor)
    }
    fn partial(&self, var: Var) -> Self {
        PolyField::partial(self, var)
    }
    fn restrict(&self, var: Var, value: &Rational) -> Self {
        PolyField::restrict(self, var, value)
    }
}

impl Coefficient for ExpPolyField {
    fn zero() -> Self {
        ExpPolyField::zero()
    }
    fn is_zero(&self) -> bool {
        ExpPolyField::is_zero(self)
    }
    fn sum(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn product(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scale(&self, factor: &Rational) -> Self {
        ExpPolyField::scale(self, factor)
    }
    fn partial(&self, var: Var) -> Self {
        ExpPolyField::partial(self, var)
    }
    fn restrict(&self, var: Var, value: &Rational) -> Self {
        ExpPolyField::restrict(self, var, value)
    }
}
