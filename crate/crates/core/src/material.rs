use num_traits::{Signed, Zero};

use crate::error::ParamError;
use crate::poly::{PolyField, Rational, Var};

/// Diffusion and convection data of the space-time operator.
///
/// `alpha` is the spatial diffusion, `epsilon` the artificial temporal
/// diffusion and `beta` the spatial convection field. An optional spatial
/// profile `alpha(x, y, z)` replaces the constant `alpha` inside the scaled
/// Hodge star; it multiplies the coefficient before the star is applied.
#[derive(Clone, Debug, PartialEq)]
pub struct MaterialParams {
    alpha: Rational,
    epsilon: Rational,
    beta: [PolyField; 3],
    alpha_profile: Option<PolyField>,
}

impl MaterialParams {
    pub fn new(alpha: Rational, epsilon: Rational, beta: [PolyField; 3]) -> Result<Self, ParamError> {
        if !alpha.is_positive() {
            return Err(ParamError::NonPositiveAlpha(alpha.to_string()));
        }
        if !epsilon.is_positive() {
            return Err(ParamError::NonPositiveEpsilon(epsilon.to_string()));
        }
        Ok(Self {
            alpha,
            epsilon,
            beta,
            alpha_profile: None,
        })
    }

    /// No convection.
    pub fn diffusive(alpha: Rational, epsilon: Rational) -> Result<Self, ParamError> {
        Self::new(alpha, epsilon, [PolyField::zero(), PolyField::zero(), PolyField::zero()])
    }

    /// Enables a spatially varying diffusion coefficient. Positivity of the
    /// profile over the domain of interest is the caller's responsibility.
    pub fn with_alpha_profile(mut self, profile: PolyField) -> Result<Self, ParamError> {
        if profile.depends_on(Var::T) {
            return Err(ParamError::TimeDependentAlpha(profile));
        }
        if let Some(c) = profile.as_constant() {
            if !c.is_positive() {
                return Err(ParamError::NonPositiveAlpha(c.to_string()));
            }
        }
        self.alpha_profile = Some(profile);
        Ok(self)
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn beta(&self) -> &[PolyField; 3] {
        &self.beta
    }

    pub fn alpha_profile(&self) -> Option<&PolyField> {
        self.alpha_profile.as_ref()
    }

    /// The diffusion coefficient as a field (profile if set, else the constant).
    pub fn alpha_field(&self) -> PolyField {
        match &self.alpha_profile {
            Some(p) => p.clone(),
            None => PolyField::constant(self.alpha.clone()),
        }
    }

    /// The diffusion coefficient when it is spatially constant.
    pub fn constant_alpha(&self) -> Result<Rational, ParamError> {
        match &self.alpha_profile {
            None => Ok(self.alpha.clone()),
            Some(p) => match p.as_constant() {
                Some(c) if !c.is_zero() => Ok(c),
                _ => Err(ParamError::NonConstantAlpha(p.clone())),
            },
        }
    }
}
