use super::flux::{edge_flux, EdgeFlux};
use super::grid::Grid1p1;
use super::linear::{LinearSystem, Row};
use super::problem::ProblemConfig;
use crate::error::SolverError;

/// Checks `α > 0` at every node and edge midpoint of the spatial grid.
pub(crate) fn check_alpha(config: &ProblemConfig, grid: &Grid1p1) -> Result<(), SolverError> {
    let hx = grid.hx();
    for k in 0..(2 * grid.columns() - 1) {
        let x = 0.5 * k as f64 * hx;
        let a = (config.alpha)(x);
        if !(a.is_finite() && a > 0.0) {
            return Err(SolverError::NonPositiveAlpha { value: a, x });
        }
    }
    Ok(())
}

pub(crate) fn describe(config: &ProblemConfig, grid: &Grid1p1) -> String {
    format!(
        "epsilon = {}, scheme = {}, grid = {}×{} interior nodes on [0, {}]×[{}, {}]",
        config.epsilon,
        config.scheme,
        grid.nx(),
        grid.nt(),
        grid.lx(),
        grid.t0(),
        grid.t_final()
    )
}

/// Flux on the spatial edge `(x_i, x_{i+1})`.
pub(crate) fn x_edge(config: &ProblemConfig, grid: &Grid1p1, i: usize) -> EdgeFlux {
    let mid = 0.5 * (grid.x(i) + grid.x(i + 1));
    edge_flux(config.scheme, (config.alpha)(mid), (config.beta)(mid), grid.hx())
}

/// Flux `ε u_t − u` on a temporal edge.
pub(crate) fn t_edge(config: &ProblemConfig, grid: &Grid1p1) -> EdgeFlux {
    edge_flux(config.scheme, config.epsilon, -1.0, grid.ht())
}

/// Assembles the vertex-centred finite-volume discretization of
/// `−(α u_x + β u)_x − (ε u_t − u)_t = f`.
///
/// Each interior row balances the edge fluxes around its node. Nodes on
/// `x = 0`, `x = Lx` and `t = t₀` are identity rows carrying `g`. Terminal
/// nodes balance a half cell whose top face carries the prescribed flux
/// `ε u_t = q`, which is the natural condition of the weak form.
pub fn assemble(config: &ProblemConfig, grid: &Grid1p1) -> Result<LinearSystem, SolverError> {
    let eps = config.epsilon;
    if !(eps.is_finite() && eps > 0.0) {
        return Err(SolverError::NonPositiveEpsilon(eps));
    }
    check_alpha(config, grid)?;

    let (hx, ht) = (grid.hx(), grid.ht());
    let xf: Vec<EdgeFlux> = (0..grid.columns() - 1).map(|i| x_edge(config, grid, i)).collect();
    let tf = t_edge(config, grid);
    let top = grid.levels() - 1;

    let system = LinearSystem::from_rows(grid.len(), |k| {
        let (i, j) = grid.coords(k);
        let (x, t) = (grid.x(i), grid.t(j));
        if grid.is_dirichlet(i, j) {
            return Row::identity(k, (config.dirichlet)(x, t));
        }
        let mut row = Row {
            entries: Vec::with_capacity(5),
            rhs: (config.source)(x, t),
        };
        // −(1/hx)[F(i+½) − F(i−½)]
        let (east, west) = (xf[i], xf[i - 1]);
        row.add(grid.index(i, j), -(east.left - west.right) / hx);
        row.add(grid.index(i + 1, j), -east.right / hx);
        row.add(grid.index(i - 1, j), west.left / hx);
        if j < top {
            // −(1/ht)[G(j+½) − G(j−½)]
            row.add(grid.index(i, j), -(tf.left - tf.right) / ht);
            row.add(grid.index(i, j + 1), -tf.right / ht);
            row.add(grid.index(i, j - 1), tf.left / ht);
        } else {
            // −(2/ht)[(q − u) − G(N−½)]
            let s = 2.0 / ht;
            row.add(grid.index(i, j), s * (1.0 + tf.right));
            row.add(grid.index(i, j - 1), s * tf.left);
            row.rhs += s * (config.terminal_flux)(x);
        }
        row
    });
    Ok(system
        .with_grid(grid.clone())
        .with_context(describe(config, grid)))
}

/// Assembles and solves.
pub fn solve_problem(
    config: &ProblemConfig,
    grid: &Grid1p1,
) -> Result<super::field::DiscreteField, SolverError> {
    assemble(config, grid)?.solve()
}
