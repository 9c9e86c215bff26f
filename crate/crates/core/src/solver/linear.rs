use faer::linalg::solvers::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;
use rayon::prelude::*;

use super::field::DiscreteField;
use super::grid::Grid1p1;
use crate::error::SolverError;

/// Relative residual accepted after the direct solve.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

/// Square sparse system in compressed-row form.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
    rhs: Vec<f64>,
    grid: Option<Grid1p1>,
    context: String,
}

/// One assembled row: sorted, duplicate-free `(column, value)` pairs and the
/// right-hand side.
#[derive(Clone, Debug, Default)]
pub struct Row {
    pub entries: Vec<(usize, f64)>,
    pub rhs: f64,
}

impl Row {
    pub fn identity(index: usize, value: f64) -> Self {
        Self {
            entries: vec![(index, 1.0)],
            rhs: value,
        }
    }

    pub fn add(&mut self, col: usize, value: f64) {
        self.entries.push((col, value));
    }

    fn normalize(mut self) -> Self {
        self.entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(self.entries.len());
        for (c, v) in self.entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += v,
                _ => merged.push((c, v)),
            }
        }
        self.entries = merged;
        self
    }
}

impl LinearSystem {
    /// Builds the system from independently computed rows; `row(k)` is
    /// evaluated in parallel.
    pub fn from_rows<F>(n: usize, row: F) -> Self
    where
        F: Fn(usize) -> Row + Sync + Send,
    {
        let rows: Vec<Row> = (0..n).into_par_iter().map(|k| row(k).normalize()).collect();
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        let mut rhs = Vec::with_capacity(n);
        row_ptr.push(0);
        for r in rows {
            for (c, v) in r.entries {
                assert!(c < n, "column {c} out of range for a {n}×{n} system");
                col_idx.push(c);
                values.push(v);
            }
            row_ptr.push(col_idx.len());
            rhs.push(r.rhs);
        }
        Self {
            row_ptr,
            col_idx,
            values,
            rhs,
            grid: None,
            context: String::new(),
        }
    }

    /// `n × n` identity with the given right-hand side.
    pub fn identity(rhs: Vec<f64>) -> Self {
        let n = rhs.len();
        let mut sys = Self::from_rows(n, |k| Row::identity(k, 0.0));
        sys.rhs = rhs;
        sys
    }

    pub fn with_grid(mut self, grid: Grid1p1) -> Self {
        self.grid = Some(grid);
        self
    }

    /// Description attached to solver errors (parameters, scheme, grid).
    pub fn with_context(mut self, context: impl Into<String>) -> Self {
        self.context = context.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.rhs.len()
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn grid(&self) -> Option<&Grid1p1> {
        self.grid.as_ref()
    }

    pub fn context(&self) -> &str {
        &self.context
    }

    pub fn row(&self, k: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[k]..self.row_ptr[k + 1];
        self.col_idx[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    pub fn entry(&self, r: usize, c: usize) -> f64 {
        self.row(r).find(|e| e.0 == c).map_or(0.0, |e| e.1)
    }

    pub fn is_identity_row(&self, k: usize) -> bool {
        let mut it = self.row(k).filter(|e| e.1 != 0.0);
        matches!((it.next(), it.next()), (Some((c, v)), None) if c == k && v == 1.0)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim());
        (0..self.dim())
            .map(|k| self.row(k).map(|(c, v)| v * x[c]).sum())
            .collect()
    }

    /// `A x − b`.
    pub fn residual(&self, x: &[f64]) -> Vec<f64> {
        self.matvec(x)
            .into_iter()
            .zip(&self.rhs)
            .map(|(ax, b)| ax - b)
            .collect()
    }

    /// Normwise backward error `‖A x − b‖∞ / (‖A‖∞ ‖x‖∞ + ‖b‖∞)`.
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        let inf = |v: &[f64]| v.iter().fold(0.0f64, |m, a| m.max(a.abs()));
        let a_norm = (0..self.dim())
            .map(|k| self.row(k).map(|(_, v)| v.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        let scale = a_norm * inf(x) + inf(&self.rhs);
        if scale == 0.0 {
            0.0
        } else {
            inf(&self.residual(x)) / scale
        }
    }

    fn singular(&self, detail: impl Into<String>) -> SolverError {
        SolverError::Singular {
            context: if self.context.is_empty() {
                format!("{}×{} system", self.dim(), self.dim())
            } else {
                self.context.clone()
            },
            detail: detail.into(),
        }
    }

    /// Sparse LU solve; the result is checked against the relative residual
    /// tolerance.
    pub fn solve_values(&self) -> Result<Vec<f64>, SolverError> {
        let n = self.dim();
        let mut triplets = Vec::with_capacity(self.nnz());
        for r in 0..n {
            for (c, v) in self.row(r) {
                triplets.push(Triplet::new(r, c, v));
            }
        }
        let matrix = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &triplets)
            .map_err(|e| self.singular(format!("matrix construction failed: {e:?}")))?;
        let lu = matrix
            .sp_lu()
            .map_err(|e| self.singular(format!("factorization failed: {e:?}")))?;
        let mut x = Mat::<f64>::from_fn(n, 1, |i, _| self.rhs[i]);
        lu.solve_in_place(&mut x);
        let mut x: Vec<f64> = (0..n).map(|i| x[(i, 0)]).collect();
        if x.iter().any(|v| !v.is_finite()) {
            return Err(self.singular("solution contains non-finite values"));
        }
        // one step of iterative refinement
        let r = self.residual(&x);
        let mut dx = Mat::<f64>::from_fn(n, 1, |i, _| r[i]);
        lu.solve_in_place(&mut dx);
        for (i, v) in x.iter_mut().enumerate() {
            *v -= dx[(i, 0)];
        }
        let rel = self.relative_residual(&x);
        if !(rel <= RESIDUAL_TOLERANCE) {
            return Err(self.singular(format!(
                "relative residual {rel:.3e} exceeds {RESIDUAL_TOLERANCE:e}"
            )));
        }
        Ok(x)
    }

    /// Solves and wraps the values as a field on the attached grid.
    pub fn solve(&self) -> Result<DiscreteField, SolverError> {
        let grid = self
            .grid
            .clone()
            .ok_or_else(|| SolverError::InvalidGrid("system has no grid attached".into()))?;
        DiscreteField::new(grid, self.solve_values()?)
    }
}
