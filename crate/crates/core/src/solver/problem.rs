use std::fmt;
use std::sync::Arc;

/// A function of `x`.
pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// A function of `(x, t)`.
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Edge-flux discretization of `J(u) = (α u_x + β u, ε u_t − u)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Central differences for both diffusion and convection.
    Centered,
    /// Central diffusion, convection taken from the upwind node.
    Upwind,
    /// Scharfetter–Gummel fluxes built on the Bernoulli function.
    ExpFitted,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Centered, Scheme::Upwind, Scheme::ExpFitted];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Centered => "centered",
            Scheme::Upwind => "upwind",
            Scheme::ExpFitted => "exp-fitted",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "centered" | "central" => Ok(Scheme::Centered),
            "upwind" => Ok(Scheme::Upwind),
            "exp-fitted" | "expfitted" | "scharfetter-gummel" | "sg" => Ok(Scheme::ExpFitted),
            other => Err(format!("unknown scheme '{other}' (expected centered, upwind or exp-fitted)")),
        }
    }
}

/// The 1+1D space-time problem
///
/// ```text
/// −(α u_x + β u)_x − (ε u_t − u)_t = f   in (0, Lx) × (t₀, T)
/// u = g                                  on x = 0, x = Lx and t = t₀
/// ε u_t = q                              on t = T
/// ```
///
/// With `ε = 0` it is the parabolic problem `u_t − (α u_x + β u)_x = f`,
/// which only the time-stepping reference accepts.
#[derive(Clone)]
pub struct ProblemConfig {
    pub alpha: SpaceFn,
    pub beta: SpaceFn,
    pub epsilon: f64,
    pub source: SpaceTimeFn,
    pub dirichlet: SpaceTimeFn,
    pub terminal_flux: SpaceFn,
    pub scheme: Scheme,
    pub exact: Option<SpaceTimeFn>,
}

impl ProblemConfig {
    /// `α = 1`, `β = 0`, `ε = 1`, zero data.
    pub fn new(scheme: Scheme) -> Self {
        Self {
            alpha: Arc::new(|_| 1.0),
            beta: Arc::new(|_| 0.0),
            epsilon: 1.0,
            source: Arc::new(|_, _| 0.0),
            dirichlet: Arc::new(|_, _| 0.0),
            terminal_flux: Arc::new(|_| 0.0),
            scheme,
            exact: None,
        }
    }

    pub fn alpha_const(mut self, alpha: f64) -> Self {
        self.alpha = Arc::new(move |_| alpha);
        self
    }

    pub fn beta_const(mut self, beta: f64) -> Self {
        self.beta = Arc::new(move |_| beta);
        self
    }

    pub fn alpha_fn(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.alpha = Arc::new(f);
        self
    }

    pub fn beta_fn(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.beta = Arc::new(f);
        self
    }

    pub fn epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn source(mut self, f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.source = Arc::new(f);
        self
    }

    pub fn dirichlet(mut self, g: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.dirichlet = Arc::new(g);
        self
    }

    pub fn terminal_flux(mut self, q: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.terminal_flux = Arc::new(q);
        self
    }

    pub fn exact(mut self, u: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.exact = Some(Arc::new(u));
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Self {
        self.clone().epsilon(epsilon)
    }
}

impl fmt::Debug for ProblemConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemConfig")
            .field("epsilon", &self.epsilon)
            .field("scheme", &self.scheme)
            .field("has_exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}
