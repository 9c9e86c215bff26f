//! Seeded random polynomials, forms and parameters for identity checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::BasisForm;
use crate::form::KForm;
use crate::material::MaterialParams;
use crate::poly::{rational, Exponents, PolyField, Rational, Var};
use crate::vector_calculus::Vector3;

/// Deterministic generator; the same seed yields the same sequence on every
/// platform.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Nonzero small rational `n/d` with `|n| ≤ 9`, `1 ≤ d ≤ 6`.
    pub fn coefficient(&mut self) -> Rational {
        let mut n = 0;
        while n == 0 {
            n = self.rng.random_range(-9i64..=9);
        }
        rational(n, self.rng.random_range(1i64..=6))
    }

    pub fn positive(&mut self) -> Rational {
        rational(self.rng.random_range(1i64..=12), self.rng.random_range(1i64..=8))
    }

    /// Up to `max_terms` monomials of total degree `≤ max_degree` in `vars`.
    pub fn poly_in(&mut self, vars: &[Var], max_degree: u32, max_terms: usize) -> PolyField {
        let terms = self.rng.random_range(1..=max_terms);
        let mut out = PolyField::zero();
        for _ in 0..terms {
            let mut exps: Exponents = [0; 4];
            let mut budget = self.rng.random_range(0..=max_degree);
            for v in vars {
                if budget == 0 {
                    break;
                }
                let e = self.rng.random_range(0..=budget);
                exps[v.index()] = e;
                budget -= e;
            }
            out += &PolyField::monomial(exps, self.coefficient());
        }
        out
    }

    pub fn poly(&mut self, max_degree: u32, max_terms: usize) -> PolyField {
        let mut vars = Var::ALL;
        // vary which variable gets the degree budget first
        let shift = self.rng.random_range(0..4);
        vars.rotate_left(shift);
        self.poly_in(&vars, max_degree, max_terms)
    }

    pub fn cubic(&mut self) -> PolyField {
        self.poly(3, 6)
    }

    pub fn vector(&mut self, max_degree: u32) -> Vector3 {
        [(); 3].map(|_| self.poly(max_degree, 4))
    }

    /// A random k-form; every basis component is present with probability 3/4.
    pub fn form(&mut self, k: usize, max_degree: u32) -> KForm {
        let mut components = Vec::new();
        for b in BasisForm::of_degree(k) {
            if self.rng.random_range(0..4) != 0 {
                components.push((b, self.poly(max_degree, 4)));
            }
        }
        KForm::try_from_components(k, components).expect("basis of degree k")
    }

    /// Convection field whose curl vanishes: the gradient of a random
    /// spatial polynomial, or a constant vector.
    pub fn closed_beta(&mut self, constant: bool) -> Vector3 {
        if constant {
            return [(); 3].map(|_| PolyField::constant(self.coefficient()));
        }
        let phi = self.poly_in(&Var::SPATIAL, 3, 4);
        [phi.partial(Var::X), phi.partial(Var::Y), phi.partial(Var::Z)]
    }

    /// Convection field with nonzero curl (or time dependence), so that `b₁`
    /// is not closed.
    pub fn open_beta(&mut self) -> Vector3 {
        let mut beta = self.closed_beta(true);
        let (i, j) = match self.rng.random_range(0..4) {
            0 => (0, Var::Y),
            1 => (1, Var::Z),
            2 => (2, Var::X),
            _ => (self.rng.random_range(0..3), Var::T),
        };
        beta[i] += &PolyField::monomial(
            {
                let mut e = [0; 4];
                e[j.index()] = self.rng.random_range(1..=2);
                e
            },
            self.coefficient(),
        );
        beta
    }

    pub fn params(&mut self, beta: Vector3) -> MaterialParams {
        MaterialParams::new(self.positive(), self.positive(), beta).expect("positive by construction")
    }

    pub fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
