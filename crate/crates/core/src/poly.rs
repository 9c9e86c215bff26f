//! Exact multivariate polynomials in the space-time coordinates `(x, y, z, t)`
//! with arbitrary-precision rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar used for every symbolic coefficient.
pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Best-effort conversion to `f64` (used only by numeric consumers).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Space-time coordinate. The declaration order is the canonical order
/// used everywhere: `x < y < z < t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
    T = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];
    pub const SPATIAL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        Var::ALL.get(i).copied()
    }

    pub fn symbol(self) -> char {
        ['x', 'y', 'z', 't'][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Exponent tuple `(e_x, e_y, e_z, e_t)` of a monomial.
pub type Exponents = [u32; 4];

/// Polynomial with exact rational coefficients. Zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyField {
    terms: BTreeMap<Exponents, Rational>,
}

impl PolyField {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(integer(n))
    }

    /// The coordinate function `v`.
    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exponents: Exponents, coeff: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(exponents, coeff);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exponents: Exponents, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponents).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &Exponents) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn depends_on(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] > 0)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c * factor))
                .collect(),
        }
    }

    pub fn partial(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut de = *e;
            de[i] -= 1;
            out.add_term(de, c * integer(e[i] as i64));
        }
        out
    }

    /// Antiderivative in `v` with zero integration constant on the `v = 0` slice.
    pub fn antiderivative(&self, v: Var) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ie = *e;
            ie[i] += 1;
            out.add_term(ie, c / integer(ie[i] as i64));
        }
        out
    }

    /// Substitutes the constant `value` for the coordinate `v`.
    pub fn restrict(&self, v: Var, value: &Rational) -> Self {
        let i = v.index();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut re = *e;
            re[i] = 0;
            out.add_term(re, c * pow_rational(value, e[i]));
        }
        out
    }

    pub fn eval(&self, point: &[Rational; 4]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut m = c.clone();
                for (k, p) in point.iter().enumerate() {
                    m *= pow_rational(p, e[k]);
                }
                m
            })
            .fold(Rational::zero(), |acc, m| acc + m)
    }

    pub fn eval_f64(&self, point: [f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut m = to_f64(c);
                for k in 0..4 {
                    m *= point[k].powi(e[k] as i32);
                }
                m
            })
            .sum()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

fn pow_rational(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

impl From<Rational> for PolyField {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for PolyField {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Var> for PolyField {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl<'a> Add<&'a PolyField> for &'a PolyField {
    type Output = PolyField;
    fn add(self, rhs: &PolyField) -> PolyField {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a PolyField> for &'a PolyField {
    type Output = PolyField;
    fn sub(self, rhs: &PolyField) -> PolyField {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a PolyField> for &'a PolyField {
    type Output = PolyField;
    fn mul(self, rhs: &PolyField) -> PolyField {
        let mut out = PolyField::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Neg for &PolyField {
    type Output = PolyField;
    fn neg(self) -> PolyField {
        PolyField {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for PolyField {
    type Output = PolyField;
    fn neg(self) -> PolyField {
        -&self
    }
}

impl AddAssign<&PolyField> for PolyField {
    fn add_assign(&mut self, rhs: &PolyField) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&PolyField> for PolyField {
    fn sub_assign(&mut self, rhs: &PolyField) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<PolyField> for PolyField {
            type Output = PolyField;
            fn $method(self, rhs: PolyField) -> PolyField {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a PolyField> for PolyField {
            type Output = PolyField;
            fn $method(self, rhs: &PolyField) -> PolyField {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<PolyField> for &'a PolyField {
            type Output = PolyField;
            fn $method(self, rhs: PolyField) -> PolyField {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl fmt::Display for PolyField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for v in Var::ALL {
                match e[v.index()] {
                    0 => {}
                    1 => factors.push(v.symbol().to_string()),
                    p => factors.push(format!("{}^{}", v.symbol(), p)),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid polynomial `{input}`: {reason}")]
pub struct ParsePolyError {
    pub input: String,
    pub reason: String,
}

impl FromStr for PolyField {
    type Err = ParsePolyError;

    /// Parses expressions such as `3/2*x^2*t - (y + 1)*z`. Division is only
    /// allowed by nonzero constants; decimal literals are read exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = Parser {
            chars: s.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let fail = |reason: String| ParsePolyError {
            input: s.to_string(),
            reason,
        };
        let p = parser.expr().map_err(fail)?;
        if parser.pos != parser.chars.len() {
            return Err(fail(format!(
                "unexpected `{}` at offset {}",
                parser.chars[parser.pos], parser.pos
            )));
        }
        Ok(p)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<PolyField, String> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc += &self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PolyField, String> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return Err("division by a non-constant or zero".into()),
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PolyField, String> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<PolyField, String> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let n: u32 = digits
                .parse()
                .map_err(|_| format!("expected a non-negative integer exponent at offset {start}"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolyField, String> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(format!("missing `)` at offset {}", self.pos));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => self.number(),
            Some(c) => match Var::ALL.iter().find(|v| v.symbol() == c) {
                Some(v) => {
                    self.pos += 1;
                    Ok(PolyField::var(*v))
                }
                None => Err(format!("unexpected `{c}` at offset {}", self.pos)),
            },
            None => Err("unexpected end of input".into()),
        }
    }

    fn number(&mut self) -> Result<PolyField, String> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text.as_str(), ""),
        };
        if frac_part.contains('.') || (int_part.is_empty() && frac_part.is_empty()) {
            return Err(format!("malformed number `{text}`"));
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: BigInt = digits
            .parse()
            .map_err(|_| format!("malformed number `{text}`"))?;
        let denom = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(PolyField::constant(BigRational::new(numer, denom)))
    }
}
