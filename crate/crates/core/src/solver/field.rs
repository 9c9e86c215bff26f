use super::grid::Grid1p1;
use crate::error::SolverError;

/// Nodal values on a [`Grid1p1`], boundary nodes included.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteField {
    grid: Grid1p1,
    values: Vec<f64>,
}

/// Composite trapezoid weights for `n` equally spaced nodes.
pub(crate) fn trapezoid_weights(n: usize, h: f64) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| if k == 0 || k + 1 == n { 0.5 * h } else { h })
}

impl DiscreteField {
    pub fn new(grid: Grid1p1, values: Vec<f64>) -> Result<Self, SolverError> {
        if values.len() != grid.len() {
            return Err(SolverError::InvalidGrid(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            let (i, j) = grid.coords(k);
            return Err(SolverError::InvalidGrid(format!(
                "non-finite value at node ({i}, {j})"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: &Grid1p1) -> Self {
        Self {
            values: vec![0.0; grid.len()],
            grid: grid.clone(),
        }
    }

    /// Samples `f(x, t)` at every node.
    pub fn from_fn(grid: &Grid1p1, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = (0..grid.len())
            .map(|k| {
                let (i, j) = grid.coords(k);
                f(grid.x(i), grid.t(j))
            })
            .collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &Grid1p1 {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let k = self.grid.index(i, j);
        self.values[k] = value;
    }

    /// Values on time level `j`.
    pub fn slice(&self, j: usize) -> &[f64] {
        let c = self.grid.columns();
        &self.values[j * c..(j + 1) * c]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self, SolverError> {
        if self.grid != other.grid {
            return Err(SolverError::GridMismatch);
        }
        Ok(Self {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SolverError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| f(*v)).collect(),
        }
    }

    /// Squared trapezoidal `L²(0, Lx)` norm on time level `j`.
    pub fn l2_squared_at(&self, j: usize) -> f64 {
        trapezoid_weights(self.grid.columns(), self.grid.hx())
            .zip(self.slice(j))
            .map(|(w, v)| w * v * v)
            .sum()
    }

    pub fn l2_at(&self, j: usize) -> f64 {
        self.l2_squared_at(j).sqrt()
    }

    /// `L²(0, Lx)` norm on the terminal slice.
    pub fn l2_final(&self) -> f64 {
        self.l2_at(self.grid.levels() - 1)
    }

    /// Nodal `∂x` on level `j`: central inside, one-sided at `x = 0, Lx`.
    pub fn dx_at(&self, j: usize) -> Vec<f64> {
        nodal_derivative(self.slice(j), self.grid.hx())
    }

    /// Squared `L²` norm of `∂x` on level `j`.
    pub fn dx_l2_squared_at(&self, j: usize) -> f64 {
        trapezoid_weights(self.grid.columns(), self.grid.hx())
            .zip(self.dx_at(j))
            .map(|(w, v)| w * v * v)
            .sum()
    }

    /// Trapezoidal space-time `L²(Ω)` norm.
    pub fn l2_space_time(&self) -> f64 {
        let g = &self.grid;
        trapezoid_weights(g.levels(), g.ht())
            .enumerate()
            .map(|(j, w)| w * self.l2_squared_at(j))
            .sum::<f64>()
            .sqrt()
    }

    /// `∫ ‖e‖²_{V_x} dt` with `‖e‖²_{V_x} = ‖e‖² + ‖∂x e‖²`.
    pub fn energy_integral(&self) -> f64 {
        let g = &self.grid;
        trapezoid_weights(g.levels(), g.ht())
            .enumerate()
            .map(|(j, w)| w * (self.l2_squared_at(j) + self.dx_l2_squared_at(j)))
            .sum()
    }

    /// Maximum nodal deviation from `u(x, t)`.
    pub fn max_error(&self, u: impl Fn(f64, f64) -> f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let (i, j) = self.grid.coords(k);
                (v - u(self.grid.x(i), self.grid.t(j))).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Space-time `L²` distance to `u(x, t)`.
    pub fn l2_error(&self, u: impl Fn(f64, f64) -> f64) -> f64 {
        let exact = Self::from_fn(&self.grid, u);
        self.sub(&exact).expect("same grid").l2_space_time()
    }
}

/// Second-order nodal derivative of equally spaced samples: central inside,
/// second-order one-sided at both ends.
pub(crate) fn nodal_derivative(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len();
    debug_assert!(n >= 3);
    (0..n)
        .map(|k| {
            if k == 0 {
                (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h)
            } else if k + 1 == n {
                (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h)
            } else {
                (v[k + 1] - v[k - 1]) / (2.0 * h)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trapezoid_norms_match_closed_forms() {
        let g = Grid1p1::unit(200, 100).unwrap();
        let u = DiscreteField::from_fn(&g, |x, t| (PI * x).sin() * (1.0 + t));
        // ∫₀¹ sin²(πx) dx = 1/2
        assert!((u.l2_squared_at(0) - 0.5).abs() < 1e-12);
        // ∫₀¹ (1+t)² dt / 2 = 7/6
        assert!((u.l2_space_time().powi(2) - 7.0 / 6.0).abs() < 1e-4);
        // ∫ (1/2 + π²/2)(1+t)² dt
        let energy = (0.5 + 0.5 * PI * PI) * 7.0 / 3.0;
        assert!((u.energy_integral() - energy).abs() / energy < 1e-3);
    }

    #[test]
    fn derivative_is_exact_on_quadratics() {
        let h = 0.1;
        let v: Vec<f64> = (0..6).map(|k| (k as f64 * h).powi(2)).collect();
        for (k, d) in nodal_derivative(&v, h).into_iter().enumerate() {
            assert!((d - 2.0 * k as f64 * h).abs() < 1e-12);
        }
    }

    #[test]
    fn mismatched_grids() {
        let a = DiscreteField::zeros(&Grid1p1::unit(4, 4).unwrap());
        let b = DiscreteField::zeros(&Grid1p1::unit(4, 8).unwrap());
        assert!(matches!(a.sub(&b), Err(SolverError::GridMismatch)));
    }

    #[test]
    fn rejects_non_finite() {
        let g = Grid1p1::unit(3, 3).unwrap();
        let mut v = vec![0.0; g.len()];
        v[5] = f64::NAN;
        assert!(DiscreteField::new(g, v).is_err());
    }
}
