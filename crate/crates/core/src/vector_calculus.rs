//! Classical 3D vector calculus on polynomial fields. These operators are
//! written independently of the form machinery and serve as the reference
//! against which form expansions are compared.

use crate::poly::{PolyField, Rational, Var};

pub type Vector3 = [PolyField; 3];

pub fn zero_vector() -> Vector3 {
    [PolyField::zero(), PolyField::zero(), PolyField::zero()]
}

pub fn grad(u: &PolyField) -> Vector3 {
    [u.partial(Var::X), u.partial(Var::Y), u.partial(Var::Z)]
}

pub fn div(u: &Vector3) -> PolyField {
    &(&u[0].partial(Var::X) + &u[1].partial(Var::Y)) + &u[2].partial(Var::Z)
}

pub fn curl(u: &Vector3) -> Vector3 {
    [
        &u[2].partial(Var::Y) - &u[1].partial(Var::Z),
        &u[0].partial(Var::Z) - &u[2].partial(Var::X),
        &u[1].partial(Var::X) - &u[0].partial(Var::Y),
    ]
}

pub fn cross(a: &Vector3, b: &Vector3) -> Vector3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot(a: &Vector3, b: &Vector3) -> PolyField {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

/// Spatial Laplacian `∂xx + ∂yy + ∂zz`.
pub fn laplacian(u: &PolyField) -> PolyField {
    div(&grad(u))
}

pub fn map(u: &Vector3, f: impl Fn(&PolyField) -> PolyField) -> Vector3 {
    [f(&u[0]), f(&u[1]), f(&u[2])]
}

pub fn scale(u: &Vector3, c: &Rational) -> Vector3 {
    map(u, |x| x.scale(c))
}

pub fn mul(f: &PolyField, u: &Vector3) -> Vector3 {
    map(u, |x| f * x)
}

pub fn add(a: &Vector3, b: &Vector3) -> Vector3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn neg(a: &Vector3) -> Vector3 {
    map(a, |x| -x)
}

pub fn dt(u: &Vector3) -> Vector3 {
    map(u, |x| x.partial(Var::T))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyField {
        s.parse().unwrap()
    }

    #[test]
    fn classical_identities() {
        let u = p("x^2*y + z*t - 3*y^3");
        assert!(curl(&grad(&u)).iter().all(PolyField::is_zero));
        let v = [p("x*y*z"), p("y^2 - t"), p("x^3*z")];
        assert!(div(&curl(&v)).is_zero());
    }

    #[test]
    fn rotation_field() {
        let v = [p("y"), p("-x"), p("0")];
        assert!(div(&v).is_zero());
        assert_eq!(curl(&v), [p("0"), p("0"), p("-2")]);
    }

    #[test]
    fn cross_of_axes() {
        let ex = [p("1"), p("0"), p("0")];
        let ey = [p("0"), p("1"), p("0")];
        assert_eq!(cross(&ex, &ey), [p("0"), p("0"), p("1")]);
        assert!(dot(&ex, &ey).is_zero());
    }
}
