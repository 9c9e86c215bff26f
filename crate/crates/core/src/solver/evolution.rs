use super::assemble::{check_alpha, describe, x_edge};
use super::field::DiscreteField;
use super::grid::Grid1p1;
use super::problem::ProblemConfig;
use crate::error::SolverError;

/// Backward-Euler solution of the parabolic limit `u_t − (α u_x + β u)_x = f`
/// on the nodes of `grid`, marching from `u(x, t₀) = g(x, t₀)` with step `ht`.
///
/// The spatial fluxes are those of `config.scheme`; `config.epsilon` and the
/// terminal data are not used.
pub fn reference_evolution(config: &ProblemConfig, grid: &Grid1p1) -> Result<DiscreteField, SolverError> {
    check_alpha(config, grid)?;
    let (hx, ht) = (grid.hx(), grid.ht());
    let n = grid.columns();
    let fluxes: Vec<_> = (0..n - 1).map(|i| x_edge(config, grid, i)).collect();

    let mut u = DiscreteField::zeros(grid);
    for i in 0..n {
        u.set(i, 0, (config.dirichlet)(grid.x(i), grid.t(0)));
    }

    let (mut lower, mut diag, mut upper, mut rhs) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    for j in 1..grid.levels() {
        let t = grid.t(j);
        for i in 0..n {
            let x = grid.x(i);
            if i == 0 || i == n - 1 {
                (lower[i], diag[i], upper[i], rhs[i]) = (0.0, 1.0, 0.0, (config.dirichlet)(x, t));
                continue;
            }
            let (east, west) = (fluxes[i], fluxes[i - 1]);
            lower[i] = west.left / hx;
            diag[i] = 1.0 / ht - (east.left - west.right) / hx;
            upper[i] = -east.right / hx;
            rhs[i] = (config.source)(x, t) + u.at(i, j - 1) / ht;
        }
        let level = thomas(&lower, &diag, &upper, &rhs).ok_or_else(|| SolverError::Singular {
            context: describe(config, grid),
            detail: format!("zero pivot in the tridiagonal solve at t = {t}"),
        })?;
        for (i, v) in level.into_iter().enumerate() {
            u.set(i, j, v);
        }
    }
    Ok(u)
}

/// Tridiagonal elimination without pivoting; `None` on a vanishing pivot.
fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if pivot == 0.0 {
        return None;
    }
    c[0] = upper[0] / pivot;
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i] * c[i - 1];
        if pivot == 0.0 || !pivot.is_finite() {
            return None;
        }
        c[i] = upper[i] / pivot;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Some(d)
}
