use crate::error::SolverError;

/// Tensor grid on `[0, Lx] × [t₀, T]` with `nx × nt` interior nodes plus one
/// boundary layer of nodes on each side. Nodes are numbered
/// lexicographically with `x` fastest: `index(i, j) = j (nx + 2) + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid1p1 {
    nx: usize,
    nt: usize,
    lx: f64,
    t0: f64,
    t_final: f64,
}

impl Grid1p1 {
    pub fn new(nx: usize, nt: usize, lx: f64, t0: f64, t_final: f64) -> Result<Self, SolverError> {
        if nx < 2 || nt < 2 {
            return Err(SolverError::GridTooSmall(format!(
                "need at least 2 interior nodes per direction, got nx = {nx}, nt = {nt}"
            )));
        }
        if !(lx.is_finite() && lx > 0.0) {
            return Err(SolverError::InvalidGrid(format!("domain length must be positive, got {lx}")));
        }
        if !(t0.is_finite() && t_final.is_finite() && t_final > t0) {
            return Err(SolverError::InvalidGrid(format!(
                "time interval [{t0}, {t_final}] is empty"
            )));
        }
        Ok(Self {
            nx,
            nt,
            lx,
            t0,
            t_final,
        })
    }

    /// Grid with the given numbers of cells (intervals) per direction.
    pub fn with_cells(cells_x: usize, cells_t: usize, lx: f64, t0: f64, t_final: f64) -> Result<Self, SolverError> {
        Self::new(
            cells_x.saturating_sub(1),
            cells_t.saturating_sub(1),
            lx,
            t0,
            t_final,
        )
    }

    /// `cells_x × cells_t` cells on the unit square.
    pub fn unit(cells_x: usize, cells_t: usize) -> Result<Self, SolverError> {
        Self::with_cells(cells_x, cells_t, 1.0, 0.0, 1.0)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    pub fn lx(&self) -> f64 {
        self.lx
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn hx(&self) -> f64 {
        self.lx / (self.nx + 1) as f64
    }

    pub fn ht(&self) -> f64 {
        (self.t_final - self.t0) / (self.nt + 1) as f64
    }

    /// Nodes per time level, boundary included.
    pub fn columns(&self) -> usize {
        self.nx + 2
    }

    /// Number of time levels, boundary included.
    pub fn levels(&self) -> usize {
        self.nt + 2
    }

    pub fn len(&self) -> usize {
        self.columns() * self.levels()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, i: usize) -> f64 {
        if i == self.nx + 1 {
            self.lx
        } else {
            i as f64 * self.hx()
        }
    }

    pub fn t(&self, j: usize) -> f64 {
        if j == self.nt + 1 {
            self.t_final
        } else {
            self.t0 + j as f64 * self.ht()
        }
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.columns() && j < self.levels());
        j * self.columns() + i
    }

    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index % self.columns(), index / self.columns())
    }

    /// Lateral faces and the initial slice carry Dirichlet data.
    pub fn is_dirichlet(&self, i: usize, j: usize) -> bool {
        i == 0 || i == self.nx + 1 || j == 0
    }

    /// Nodes on the terminal slice that are not Dirichlet nodes.
    pub fn is_terminal(&self, i: usize, j: usize) -> bool {
        j == self.nt + 1 && !self.is_dirichlet(i, j)
    }

    /// Same spatial grid and time interval with `factor` times as many cells in `t`.
    pub fn refine_time(&self, factor: usize) -> Result<Self, SolverError> {
        Self::with_cells(self.nx + 1, (self.nt + 1) * factor, self.lx, self.t0, self.t_final)
    }
}
