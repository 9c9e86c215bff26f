use super::assemble::solve_problem;
use super::field::DiscreteField;
use super::grid::Grid1p1;
use super::problem::ProblemConfig;
use crate::error::SolverError;

/// Errors against a manufactured solution on a sequence of uniform grids.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceStudy {
    /// Cells per direction.
    pub cells: Vec<usize>,
    /// Space-time `L²` error of the nodal values.
    pub errors: Vec<f64>,
    /// Maximum nodal error.
    pub max_errors: Vec<f64>,
}

impl ConvergenceStudy {
    /// Observed orders between consecutive grids.
    pub fn orders(&self) -> Vec<f64> {
        self.errors
            .windows(2)
            .zip(self.cells.windows(2))
            .map(|(e, c)| (e[0] / e[1]).ln() / (c[1] as f64 / c[0] as f64).ln())
            .collect()
    }
}

/// Solves on `cells × cells` grids over `[0, lx] × [t₀, T]` and measures the
/// error against `config.exact`.
pub fn convergence_study(
    config: &ProblemConfig,
    cells: &[usize],
    lx: f64,
    t0: f64,
    t_final: f64,
) -> Result<ConvergenceStudy, SolverError> {
    let exact = config
        .exact
        .clone()
        .ok_or_else(|| SolverError::InvalidGrid("convergence study needs an exact solution".into()))?;
    let mut errors = Vec::with_capacity(cells.len());
    let mut max_errors = Vec::with_capacity(cells.len());
    for &n in cells {
        let grid = Grid1p1::with_cells(n, n, lx, t0, t_final)?;
        let u = solve_problem(config, &grid)?;
        errors.push(u.l2_error(|x, t| exact(x, t)));
        max_errors.push(u.max_error(|x, t| exact(x, t)));
    }
    Ok(ConvergenceStudy {
        cells: cells.to_vec(),
        errors,
        max_errors,
    })
}

/// Range of a discrete solution compared with the range of its Dirichlet data.
#[derive(Clone, Debug, PartialEq)]
pub struct MaximumPrincipleReport {
    pub solution: DiscreteField,
    pub data_min: f64,
    pub data_max: f64,
}

impl MaximumPrincipleReport {
    pub fn min(&self) -> f64 {
        self.solution.min()
    }

    pub fn max(&self) -> f64 {
        self.solution.max()
    }

    /// Largest excursion outside `[data_min, data_max]`, or 0.
    pub fn overshoot(&self) -> f64 {
        (self.max() - self.data_max).max(self.data_min - self.min()).max(0.0)
    }

    pub fn holds(&self, tolerance: f64) -> bool {
        self.overshoot() <= tolerance
    }
}

/// Solves `config` (normally with `f = 0`, `q = 0`) and records the bounds of
/// the Dirichlet data.
pub fn maximum_principle_probe(config: &ProblemConfig, grid: &Grid1p1) -> Result<MaximumPrincipleReport, SolverError> {
    let solution = solve_problem(config, grid)?;
    let (mut data_min, mut data_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..grid.len() {
        let (i, j) = grid.coords(k);
        if grid.is_dirichlet(i, j) {
            let g = (config.dirichlet)(grid.x(i), grid.t(j));
            data_min = data_min.min(g);
            data_max = data_max.max(g);
        }
    }
    Ok(MaximumPrincipleReport {
        solution,
        data_min,
        data_max,
    })
}
