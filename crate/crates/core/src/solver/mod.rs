//! Space-time finite volumes for the scalar problem in one space dimension.
//!
//! The unknown lives on a tensor grid over `(x, t)` and the time direction is
//! treated exactly like a space direction with diffusion `ε` and convection
//! `−1`, so the whole history is obtained from a single sparse solve.

mod assemble;
mod bilinear;
mod evolution;
mod field;
mod flux;
mod grid;
mod linear;
mod problem;
mod study;
mod sweep;

pub use assemble::{assemble, solve_problem};
pub use bilinear::{discrete_bilinear, positivity_probe, weight_field, PositivityReport, RandomFieldSpec};
pub use evolution::reference_evolution;
pub use field::DiscreteField;
pub use flux::{bernoulli, edge_flux, EdgeFlux};
pub use grid::Grid1p1;
pub use linear::{LinearSystem, Row, RESIDUAL_TOLERANCE};
pub use problem::{ProblemConfig, Scheme, SpaceFn, SpaceTimeFn};
pub use study::{convergence_study, maximum_principle_probe, ConvergenceStudy, MaximumPrincipleReport};
pub use sweep::{epsilon_sweep, epsilon_sweep_with, fit_slope, FloorProbe, SlopeFit, SweepOptions, SweepPoint, SweepResult};
