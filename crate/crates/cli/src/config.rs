//! Problem files: INI text with `[problem]`, `[grid]` and `[sweep]` sections.
//!
//! ```text
//! [problem]
//! scheme = exp-fitted
//! alpha = 1e-3
//! beta = 1
//! epsilon = 0.05
//! dirichlet = sin(pi*x)
//!
//! [grid]
//! cells_x = 64
//! cells_t = 64
//!
//! [sweep]
//! eps = 0.1, 0.05, 0.025
//! ```
//!
//! Data are expressions: `alpha`, `beta` and `terminal_flux` in `x`, the
//! others in `x` and `t`. Command-line overrides of the form
//! `section.key=value` replace file values.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use hodge4d::solver::{Grid1p1, ProblemConfig, Scheme, SweepOptions};
use ini::Ini;

use crate::expr::Expr;
use crate::CliError;

const KEYS: [(&str, &[&str]); 3] = [
    (
        "problem",
        &["scheme", "alpha", "beta", "epsilon", "source", "dirichlet", "terminal_flux", "exact"],
    ),
    ("grid", &["cells_x", "cells_t", "lx", "t0", "t_final"]),
    ("sweep", &["eps", "floor_check", "floor_tolerance"]),
];

/// Raw `(section, key) → value` pairs after overrides, validated against the
/// known keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawConfig {
    values: BTreeMap<(String, String), String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let ini = Ini::load_from_str(text).map_err(|e| CliError::Usage(format!("malformed configuration: {e}")))?;
        let mut raw = Self::default();
        for (section, props) in ini.iter() {
            for (key, value) in props.iter() {
                let section = section.ok_or_else(|| {
                    CliError::Usage(format!("key `{key}` appears outside a section"))
                })?;
                raw.insert(section, key, value)?;
            }
        }
        Ok(raw)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn insert(&mut self, section: &str, key: &str, value: &str) -> Result<(), CliError> {
        let keys = KEYS
            .iter()
            .find(|(s, _)| *s == section)
            .map(|(_, k)| *k)
            .ok_or_else(|| CliError::Usage(format!("unknown section [{section}]")))?;
        if !keys.contains(&key) {
            return Err(CliError::Usage(format!(
                "unknown key `{key}` in [{section}] (known: {})",
                keys.join(", ")
            )));
        }
        self.values
            .insert((section.to_string(), key.to_string()), value.trim().to_string());
        Ok(())
    }

    /// Applies one `section.key=value` override.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let bad = || CliError::Usage(format!("override `{assignment}` is not of the form section.key=value"));
        let (path, value) = assignment.split_once('=').ok_or_else(bad)?;
        let (section, key) = path.trim().split_once('.').ok_or_else(bad)?;
        self.insert(section, key, value)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.values
            .get(&(section.to_string(), key.to_string()))
            .map(String::as_str)
    }

    fn number(&self, section: &str, key: &str, default: f64) -> Result<f64, CliError> {
        match self.get(section, key) {
            None => Ok(default),
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("{section}.{key} = `{v}` is not a finite number"))),
        }
    }

    fn count(&self, section: &str, key: &str, default: usize) -> Result<usize, CliError> {
        match self.get(section, key) {
            None => Ok(default),
            Some(v) => v
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("{section}.{key} = `{v}` is not a cell count"))),
        }
    }

    fn flag(&self, section: &str, key: &str, default: bool) -> Result<bool, CliError> {
        match self.get(section, key).map(str::to_ascii_lowercase).as_deref() {
            None => Ok(default),
            Some("true" | "yes" | "on" | "1") => Ok(true),
            Some("false" | "no" | "off" | "0") => Ok(false),
            Some(v) => Err(CliError::Usage(format!("{section}.{key} = `{v}` is not a boolean"))),
        }
    }

    fn expr(&self, key: &str, default: &str, variables: &[&str]) -> Result<Expr, CliError> {
        let source = self.get("problem", key).unwrap_or(default);
        Expr::parse(source, variables).map_err(|e| CliError::Usage(format!("problem.{key}: {e}")))
    }
}

/// Parses a comma- or whitespace-separated list of ε values.
pub fn parse_eps_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("`{s}` in the epsilon list is not a number")))
        })
        .collect()
}

/// Expressions defining the problem, kept for reports.
#[derive(Clone, Debug)]
pub struct ProblemSources {
    pub alpha: Expr,
    pub beta: Expr,
    pub source: Expr,
    pub dirichlet: Expr,
    pub terminal_flux: Expr,
    pub exact: Option<Expr>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub problem: ProblemConfig,
    pub sources: ProblemSources,
    pub grid: Grid1p1,
    pub eps: Vec<f64>,
    pub sweep: SweepOptions,
}

impl RunConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, CliError> {
        let scheme = match raw.get("problem", "scheme") {
            None => Scheme::Centered,
            Some(s) => s.parse::<Scheme>().map_err(CliError::Usage)?,
        };
        let sources = ProblemSources {
            alpha: raw.expr("alpha", "1", &["x"])?,
            beta: raw.expr("beta", "0", &["x"])?,
            source: raw.expr("source", "0", &["x", "t"])?,
            dirichlet: raw.expr("dirichlet", "0", &["x", "t"])?,
            terminal_flux: raw.expr("terminal_flux", "0", &["x"])?,
            exact: match raw.get("problem", "exact") {
                None => None,
                Some(_) => Some(raw.expr("exact", "0", &["x", "t"])?),
            },
        };
        let epsilon = raw.number("problem", "epsilon", 1.0)?;
        let grid = Grid1p1::with_cells(
            raw.count("grid", "cells_x", 32)?,
            raw.count("grid", "cells_t", 32)?,
            raw.number("grid", "lx", 1.0)?,
            raw.number("grid", "t0", 0.0)?,
            raw.number("grid", "t_final", 1.0)?,
        )
        .map_err(|e| CliError::Usage(e.to_string()))?;
        let eps = match raw.get("sweep", "eps") {
            None => Vec::new(),
            Some(list) => parse_eps_list(list)?,
        };
        let sweep = SweepOptions {
            floor_probe: raw.flag("sweep", "floor_check", true)?,
            floor_tolerance: raw.number("sweep", "floor_tolerance", SweepOptions::default().floor_tolerance)?,
        };

        let mut problem = ProblemConfig::new(scheme).epsilon(epsilon);
        let s = sources.clone();
        problem.alpha = Arc::new(move |x| s.alpha.eval(x, 0.0));
        let s = sources.clone();
        problem.beta = Arc::new(move |x| s.beta.eval(x, 0.0));
        let s = sources.clone();
        problem.source = Arc::new(move |x, t| s.source.eval(x, t));
        let s = sources.clone();
        problem.dirichlet = Arc::new(move |x, t| s.dirichlet.eval(x, t));
        let s = sources.clone();
        problem.terminal_flux = Arc::new(move |x| s.terminal_flux.eval(x, 0.0));
        problem.exact = sources.exact.clone().map(|e| {
            let f: hodge4d::solver::SpaceTimeFn = Arc::new(move |x, t| e.eval(x, t));
            f
        });
        Ok(Self {
            problem,
            sources,
            grid,
            eps,
            sweep,
        })
    }
}
