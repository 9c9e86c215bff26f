use thiserror::Error;

use crate::poly::PolyField;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FormError {
    #[error("degree {0} is outside 0..=4")]
    DegreeOutOfRange(usize),
    #[error("basis form {basis} does not have degree {expected}")]
    DegreeMismatch { expected: usize, basis: String },
    #[error("expected a {expected}-form, got a {found}-form")]
    WrongDegree { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("spatial diffusion alpha must be positive, got {0}")]
    NonPositiveAlpha(String),
    #[error("temporal diffusion epsilon must be positive, got {0}")]
    NonPositiveEpsilon(String),
    #[error("spatial diffusion profile must not depend on t: {0}")]
    TimeDependentAlpha(PolyField),
    #[error("a constant alpha is required here, but the diffusion profile is {0}")]
    NonConstantAlpha(PolyField),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConvDiffError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Form(#[from] FormError),
    /// `d b₁ ≠ 0`; each entry names a nonzero component of `d b₁`.
    #[error("convection 1-form is not closed, no potential exists; nonzero d(b1) components: {}", format_components(.components))]
    NoPotential { components: Vec<(String, PolyField)> },
    #[error("solution forms carry no dt components, but {basis} has coefficient {coefficient}")]
    MalformedSolution { basis: String, coefficient: PolyField },
    #[error("a {degree}-form is built from a {expected} field")]
    FieldShape { degree: usize, expected: &'static str },
    #[error("exponential weights failed to cancel")]
    Unreduced,
}

fn format_components(components: &[(String, PolyField)]) -> String {
    components
        .iter()
        .map(|(b, c)| format!("[{b}] {c}"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("epsilon must be positive for the space-time solve, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("alpha must be positive, got {value} at x = {x}")]
    NonPositiveAlpha { value: f64, x: f64 },
    #[error("grid too small: {0}")]
    GridTooSmall(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("singular or ill-conditioned system ({context}): {detail}")]
    Singular { context: String, detail: String },
    #[error("invalid epsilon list: {0}")]
    InvalidEpsilonList(String),
    #[error("discretization floor reached: {0}; refine the grid (more time steps) and retry")]
    DiscretizationFloor(String),
}
