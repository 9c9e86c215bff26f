use rayon::prelude::*;

use super::assemble::solve_problem;
use super::evolution::reference_evolution;
use super::field::DiscreteField;
use super::grid::Grid1p1;
use super::problem::ProblemConfig;
use crate::error::SolverError;

/// Errors of `u^ε − u⁰` for one value of `ε`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub epsilon: f64,
    /// `‖e(·, T)‖_{L²(0, Lx)}`.
    pub l2_error_final: f64,
    /// `∫ ‖e‖²_{V_x} dt`.
    pub energy_integral: f64,
}

/// Least-squares line through `(log x, log y)`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in log space.
    pub residual: f64,
}

/// Result of the time-refinement probe at the smallest `ε`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct FloorProbe {
    pub epsilon: f64,
    pub coarse: f64,
    pub fine: f64,
}

impl FloorProbe {
    pub fn relative_change(&self) -> f64 {
        (self.coarse - self.fine).abs() / self.fine.abs().max(f64::MIN_POSITIVE)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    pub fit: Option<SlopeFit>,
    pub floor_probe: Option<FloorProbe>,
}

impl SweepResult {
    pub fn slope(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }

    /// Whether `‖e(·, T)‖` strictly decreases along the list.
    pub fn is_monotone(&self) -> bool {
        self.points
            .windows(2)
            .all(|w| w[1].l2_error_final < w[0].l2_error_final)
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SweepOptions {
    /// Re-solve the smallest `ε` with twice as many time cells and abort when
    /// the error moves by more than `floor_tolerance` (relative).
    pub floor_probe: bool,
    pub floor_tolerance: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            floor_probe: true,
            floor_tolerance: 0.2,
        }
    }
}

pub fn fit_slope(xs: &[f64], ys: &[f64]) -> Option<SlopeFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    if lx.iter().chain(&ly).any(|v| !v.is_finite()) {
        return None;
    }
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Some(SlopeFit {
        slope,
        intercept,
        residual,
    })
}

fn validate(eps_list: &[f64]) -> Result<(), SolverError> {
    if eps_list.is_empty() {
        return Err(SolverError::InvalidEpsilonList("the list is empty".into()));
    }
    if let Some(e) = eps_list.iter().find(|e| !(e.is_finite() && **e > 0.0)) {
        return Err(SolverError::InvalidEpsilonList(format!(
            "every epsilon must be positive, got {e}"
        )));
    }
    if eps_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(SolverError::InvalidEpsilonList(
            "values must be strictly decreasing".into(),
        ));
    }
    Ok(())
}

fn error_field(config: &ProblemConfig, grid: &Grid1p1, epsilon: f64, reference: &DiscreteField) -> Result<DiscreteField, SolverError> {
    solve_problem(&config.with_epsilon(epsilon), grid)?.sub(reference)
}

/// Solves the space-time problem for each `ε` and compares with the
/// backward-Euler solution of the parabolic limit on the same grid.
pub fn epsilon_sweep(config: &ProblemConfig, grid: &Grid1p1, eps_list: &[f64]) -> Result<SweepResult, SolverError> {
    epsilon_sweep_with(config, grid, eps_list, SweepOptions::default())
}

pub fn epsilon_sweep_with(
    config: &ProblemConfig,
    grid: &Grid1p1,
    eps_list: &[f64],
    options: SweepOptions,
) -> Result<SweepResult, SolverError> {
    validate(eps_list)?;
    let reference = reference_evolution(config, grid)?;

    let floor_probe = if options.floor_probe {
        let epsilon = *eps_list.last().expect("validated non-empty");
        let fine_grid = grid.refine_time(2)?;
        let fine_reference = reference_evolution(config, &fine_grid)?;
        let (coarse, fine) = rayon::join(
            || error_field(config, grid, epsilon, &reference),
            || error_field(config, &fine_grid, epsilon, &fine_reference),
        );
        let probe = FloorProbe {
            epsilon,
            coarse: coarse?.l2_final(),
            fine: fine?.l2_final(),
        };
        if probe.relative_change() > options.floor_tolerance {
            return Err(SolverError::DiscretizationFloor(format!(
                "at epsilon = {epsilon} the error changes by {:.1}% when ht is halved (limit {:.0}%)",
                100.0 * probe.relative_change(),
                100.0 * options.floor_tolerance
            )));
        }
        Some(probe)
    } else {
        None
    };

    let points = eps_list
        .par_iter()
        .map(|&epsilon| {
            let e = error_field(config, grid, epsilon, &reference)?;
            Ok(SweepPoint {
                epsilon,
                l2_error_final: e.l2_final(),
                energy_integral: e.energy_integral(),
            })
        })
        .collect::<Result<Vec<_>, SolverError>>()?;

    if let Some(w) = points
        .windows(2)
        .find(|w| w[1].l2_error_final >= w[0].l2_error_final)
    {
        return Err(SolverError::DiscretizationFloor(format!(
            "the error stops decreasing between epsilon = {} ({:.3e}) and epsilon = {} ({:.3e})",
            w[0].epsilon, w[0].l2_error_final, w[1].epsilon, w[1].l2_error_final
        )));
    }

    let eps: Vec<f64> = points.iter().map(|p| p.epsilon).collect();
    let err: Vec<f64> = points.iter().map(|p| p.l2_error_final).collect();
    Ok(SweepResult {
        fit: fit_slope(&eps, &err),
        points,
        floor_probe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::problem::Scheme;
    use std::f64::consts::PI;

    #[test]
    fn slope_of_exact_power_law() {
        let xs = [1.0, 0.5, 0.25, 0.125];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(0.75)).collect();
        let fit = fit_slope(&xs, &ys).unwrap();
        assert!((fit.slope - 0.75).abs() < 1e-12);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
        assert!(fit_slope(&[1.0], &[1.0]).is_none());
    }

    #[test]
    fn rejects_bad_lists() {
        let g = Grid1p1::unit(4, 4).unwrap();
        let cfg = ProblemConfig::new(Scheme::Centered);
        for list in [vec![], vec![0.1, 0.0], vec![0.1, 0.2], vec![-1.0]] {
            assert!(matches!(
                epsilon_sweep(&cfg, &g, &list),
                Err(SolverError::InvalidEpsilonList(_))
            ));
        }
    }

    fn heat_like() -> ProblemConfig {
        ProblemConfig::new(Scheme::Centered)
            .alpha_const(0.1)
            .dirichlet(|x, _| (PI * x).sin())
    }

    #[test]
    fn halving_epsilon_shrinks_the_error() {
        let g = Grid1p1::unit(16, 800).unwrap();
        let r = epsilon_sweep(&heat_like(), &g, &[0.1, 0.05, 0.025]).unwrap();
        assert!(r.is_monotone());
        for w in r.points.windows(2) {
            let ratio = w[1].l2_error_final / w[0].l2_error_final;
            assert!(ratio <= std::f64::consts::FRAC_1_SQRT_2 + 0.05, "ratio {ratio}");
        }
        assert!(r.floor_probe.unwrap().relative_change() < 0.2);
    }

    #[test]
    fn coarse_time_grid_hits_the_floor() {
        let g = Grid1p1::unit(16, 8).unwrap();
        let r = epsilon_sweep(&heat_like(), &g, &[0.1, 0.01, 0.001]);
        assert!(matches!(r, Err(SolverError::DiscretizationFloor(_))), "{r:?}");
    }
}
