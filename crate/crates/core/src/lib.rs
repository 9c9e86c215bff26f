//! Exact exterior calculus on four-dimensional space-time for
//! convection-diffusion operators, plus a small space-time finite volume
//! solver in one space dimension.
//!
//! Forms carry exact rational polynomial coefficients. On top of the basic
//! operations (`∧`, `d`, `★`, `★_α`, codifferentials, `ι`) the crate builds
//! the unified convection-diffusion operator, its exponentially fitted flux,
//! the component-wise expansion against classical vector calculus and the
//! boundary condition reductions. The [`solver`] module discretizes the
//! scalar problem on an `(x, t)` grid.

pub mod basis;
pub mod boundary;
pub mod coefficient;
pub mod convdiff;
pub mod error;
pub mod exp_poly;
pub mod expansion;
pub mod form;
pub mod hodge;
pub mod material;
pub mod poly;
pub mod sampling;
pub mod solver;
pub mod suite;
pub mod tables;
pub mod vector_calculus;

pub use basis::BasisForm;
pub use convdiff::{exp_fitted_flux, flux, hodge_laplacian, make_potential, unified_operator, ConvectionForm, Potential};
pub use error::{ConvDiffError, FormError, ParamError, SolverError};
pub use exp_poly::ExpPolyField;
pub use form::{exterior_derivative, interior_product_nt, wedge, KForm};
pub use hodge::{codifferential_1a, codifferential_a1, hodge_star, scaled_hodge_star};
pub use material::MaterialParams;
pub use poly::{PolyField, Rational, Var};
