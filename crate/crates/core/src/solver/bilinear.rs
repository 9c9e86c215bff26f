use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{nodal_derivative, trapezoid_weights, DiscreteField};
use super::grid::Grid1p1;
use super::problem::ProblemConfig;
use crate::error::SolverError;

/// Nodal `∂t` of every column.
fn time_derivative(u: &DiscreteField) -> Vec<f64> {
    let g = u.grid();
    let mut out = vec![0.0; g.len()];
    for i in 0..g.columns() {
        let column: Vec<f64> = (0..g.levels()).map(|j| u.at(i, j)).collect();
        for (j, d) in nodal_derivative(&column, g.ht()).into_iter().enumerate() {
            out[g.index(i, j)] = d;
        }
    }
    out
}

fn space_derivative(u: &DiscreteField) -> Vec<f64> {
    let g = u.grid();
    (0..g.levels()).flat_map(|j| u.dx_at(j)).collect()
}

/// Trapezoidal evaluation of
///
/// ```text
/// B(u, v) = ∫_Ω α u_x v_x + β u v_x + ε u_t v_t − u v_t + ∫_{Γ_T} u v
/// ```
pub fn discrete_bilinear(u: &DiscreteField, v: &DiscreteField, config: &ProblemConfig) -> Result<f64, SolverError> {
    if u.grid() != v.grid() {
        return Err(SolverError::GridMismatch);
    }
    let g = u.grid();
    let (ux, ut) = (space_derivative(u), time_derivative(u));
    let (vx, vt) = (space_derivative(v), time_derivative(v));
    let eps = config.epsilon;
    let wx: Vec<f64> = trapezoid_weights(g.columns(), g.hx()).collect();
    let wt: Vec<f64> = trapezoid_weights(g.levels(), g.ht()).collect();
    let coeffs: Vec<(f64, f64)> = (0..g.columns())
        .map(|i| ((config.alpha)(g.x(i)), (config.beta)(g.x(i))))
        .collect();

    let mut volume = 0.0;
    for j in 0..g.levels() {
        for i in 0..g.columns() {
            let k = g.index(i, j);
            let (a, b) = coeffs[i];
            let uu = u.values()[k];
            let integrand = a * ux[k] * vx[k] + b * uu * vx[k] + eps * ut[k] * vt[k] - uu * vt[k];
            volume += wx[i] * wt[j] * integrand;
        }
    }
    let top = g.levels() - 1;
    let terminal: f64 = (0..g.columns()).map(|i| wx[i] * u.at(i, top) * v.at(i, top)).sum();
    Ok(volume + terminal)
}

/// `e^{ψ₀}` with `∂x ψ₀ = β/α` and `∂t ψ₀ = −1/ε`, scaled so that its largest
/// nodal value is 1. The `x` integral is a cumulative trapezoid rule.
pub fn weight_field(grid: &Grid1p1, config: &ProblemConfig) -> Result<DiscreteField, SolverError> {
    let eps = config.epsilon;
    if !(eps.is_finite() && eps > 0.0) {
        return Err(SolverError::NonPositiveEpsilon(eps));
    }
    let ratio = |x: f64| (config.beta)(x) / (config.alpha)(x);
    let mut psi_x = vec![0.0; grid.columns()];
    for i in 1..grid.columns() {
        psi_x[i] = psi_x[i - 1] + 0.5 * grid.hx() * (ratio(grid.x(i - 1)) + ratio(grid.x(i)));
    }
    let psi = |i: usize, j: usize| psi_x[i] - (grid.t(j) - grid.t0()) / eps;
    let mut top = f64::NEG_INFINITY;
    for j in 0..grid.levels() {
        for i in 0..grid.columns() {
            top = top.max(psi(i, j));
        }
    }
    let values = (0..grid.len())
        .map(|k| {
            let (i, j) = grid.coords(k);
            (psi(i, j) - top).exp()
        })
        .collect();
    DiscreteField::new(grid.clone(), values)
}

/// Shape of the random fields used by [`positivity_probe`]:
/// `Σ c_mn sin(mπx/Lx) τⁿ` with `τ = (t − t₀)/(T − t₀)`,
/// `1 ≤ m ≤ modes_x`, `1 ≤ n ≤ powers_t` and `c_mn` uniform in `[−1, 1]`.
/// Every such field vanishes on `x = 0`, `x = Lx` and `t = t₀`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct RandomFieldSpec {
    pub modes_x: usize,
    pub powers_t: usize,
}

impl Default for RandomFieldSpec {
    fn default() -> Self {
        Self {
            modes_x: 4,
            powers_t: 3,
        }
    }
}

impl RandomFieldSpec {
    pub fn sample(&self, grid: &Grid1p1, rng: &mut impl Rng) -> DiscreteField {
        let coeffs: Vec<Vec<f64>> = (0..self.modes_x)
            .map(|_| (0..self.powers_t).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();
        let (lx, t0, span) = (grid.lx(), grid.t0(), grid.t_final() - grid.t0());
        let mut u = DiscreteField::from_fn(grid, |x, t| {
            let tau = (t - t0) / span;
            coeffs
                .iter()
                .enumerate()
                .map(|(m, row)| {
                    let s = ((m + 1) as f64 * std::f64::consts::PI * x / lx).sin();
                    row.iter()
                        .enumerate()
                        .map(|(n, c)| c * s * tau.powi(n as i32 + 1))
                        .sum::<f64>()
                })
                .sum()
        });
        // sin(mπ) is only zero up to rounding
        for j in 0..grid.levels() {
            u.set(grid.nx() + 1, j, 0.0);
        }
        u
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    /// `B(u, e^{ψ₀} u)` for each sampled field.
    pub values: Vec<f64>,
}

impl PositivityReport {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn all_positive(&self) -> bool {
        !self.values.is_empty() && self.values.iter().all(|v| *v > 0.0)
    }
}

/// Evaluates `B(u, e^{ψ₀} u)` on `count` seeded random fields that vanish on
/// the Dirichlet boundary.
pub fn positivity_probe(
    config: &ProblemConfig,
    grid: &Grid1p1,
    spec: RandomFieldSpec,
    count: usize,
    seed: u64,
) -> Result<PositivityReport, SolverError> {
    let weight = weight_field(grid, config)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..count)
        .map(|_| {
            let u = spec.sample(grid, &mut rng);
            let v = u.zip_with(&weight, |a, w| a * w)?;
            discrete_bilinear(&u, &v, config)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PositivityReport { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::problem::Scheme;
    use std::f64::consts::PI;

    #[test]
    fn zero_argument() {
        let g = Grid1p1::unit(8, 8).unwrap();
        let cfg = ProblemConfig::new(Scheme::Centered).beta_const(0.3);
        let v = DiscreteField::from_fn(&g, |x, t| x * t + 1.0);
        assert_eq!(discrete_bilinear(&DiscreteField::zeros(&g), &v, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn energy_identity_without_convection() {
        // u = sin(πx) t, α = 1, ε = 1/2, β = 0:
        // B(u, u) = ∫ u_x² + ε u_t² + ½ ∫ u(·, T)² = π²/6 + 1/4 + 1/4
        let g = Grid1p1::unit(200, 200).unwrap();
        let cfg = ProblemConfig::new(Scheme::Centered).epsilon(0.5);
        let u = DiscreteField::from_fn(&g, |x, t| (PI * x).sin() * t);
        let b = discrete_bilinear(&u, &u, &cfg).unwrap();
        let exact = PI * PI / 6.0 + 0.5;
        assert!((b - exact).abs() < 1e-3, "{b} vs {exact}");
    }

    #[test]
    fn convection_term_by_hand() {
        // negligible α and ε leave ∫ β u v_x − u v_t + ∫_{Γ_T} u v;
        // with u = x, v = x², β = 1 that is 2/3 + 0 + 1/4
        let g = Grid1p1::unit(400, 4).unwrap();
        let cfg = ProblemConfig::new(Scheme::Centered).alpha_const(1e-300).beta_const(1.0).epsilon(1e-300);
        let u = DiscreteField::from_fn(&g, |x, _| x);
        let v = DiscreteField::from_fn(&g, |x, _| x * x);
        let b = discrete_bilinear(&u, &v, &cfg).unwrap();
        assert!((b - (2.0 / 3.0 + 0.25)).abs() < 1e-4, "{b}");
    }

    #[test]
    fn weight_has_the_right_gradient() {
        let g = Grid1p1::unit(10, 10).unwrap();
        let cfg = ProblemConfig::new(Scheme::Centered).alpha_const(2.0).beta_const(0.5).epsilon(0.25);
        let w = weight_field(&g, &cfg).unwrap();
        assert!((w.max() - 1.0).abs() < 1e-15);
        let (r1, r2) = (w.at(3, 4) / w.at(2, 4), w.at(3, 5) / w.at(3, 4));
        assert!((r1.ln() - 0.25 * g.hx()).abs() < 1e-12);
        assert!((r2.ln() + 4.0 * g.ht()).abs() < 1e-12);
    }

    #[test]
    fn random_fields_vanish_on_the_dirichlet_boundary() {
        let g = Grid1p1::unit(12, 9).unwrap();
        let u = RandomFieldSpec::default().sample(&g, &mut ChaCha8Rng::seed_from_u64(5));
        for k in 0..g.len() {
            let (i, j) = g.coords(k);
            if g.is_dirichlet(i, j) {
                assert!(u.at(i, j).abs() < 1e-15);
            }
        }
        assert!(u.max_abs() > 0.0);
    }

    #[test]
    fn weighted_form_is_positive() {
        let g = Grid1p1::unit(32, 32).unwrap();
        let cfg = ProblemConfig::new(Scheme::Centered).beta_const(0.5).epsilon(0.1);
        let r = positivity_probe(&cfg, &g, RandomFieldSpec::default(), 20, 11).unwrap();
        assert!(r.all_positive(), "min {}", r.min());
    }

    #[test]
    fn mismatched_grids() {
        let a = DiscreteField::zeros(&Grid1p1::unit(4, 4).unwrap());
        let b = DiscreteField::zeros(&Grid1p1::unit(5, 4).unwrap());
        let cfg = ProblemConfig::new(Scheme::Centered);
        assert!(matches!(discrete_bilinear(&a, &b, &cfg), Err(SolverError::GridMismatch)));
    }
}
