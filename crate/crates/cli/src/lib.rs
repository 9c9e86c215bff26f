//! Command-line front end for `hodge4d`: verification suites, expansion and
//! boundary reports, space-time solves and ε-sweeps.
//!
//! Exit codes: 0 when every check passes, 1 on a verification or run
//! failure, 2 on usage and configuration errors.

pub mod commands;
pub mod config;
pub mod expr;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::{parse_eps_list, RawConfig, RunConfig};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hodge4d", version, about = "Space-time exterior calculus checks and convection-diffusion solves")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Hodge star tables, the double-star scaling and every expansion cell.
    VerifyTables,
    /// Randomized exact identities of the form calculus.
    Identities {
        #[arg(long, env = "HODGE4D_SEED", default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Component-wise table of the unified operator for k-forms.
    Expand {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "3/2")]
        alpha: String,
        #[arg(long, default_value = "2/7")]
        eps: String,
        /// Three comma-separated polynomials in x, y, z, t.
        #[arg(long, default_value = "y + 1, x*t - z, 2 + x^2")]
        beta: String,
    },
    /// Reduce the lateral, initial and terminal boundary conditions for k-forms.
    Boundary {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "2")]
        alpha: String,
        #[arg(long, default_value = "1/3")]
        eps: String,
    },
    /// Solve one space-time problem.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Override a configuration value, e.g. `--set grid.cells_x=64`.
        #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Measure the distance to the parabolic limit over a list of ε.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Replaces `sweep.eps`.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
        overrides: Vec<String>,
    },
}

fn load(path: &std::path::Path, overrides: &[String]) -> Result<RunConfig, CliError> {
    let mut raw = RawConfig::load(path)?;
    for o in overrides {
        raw.set(o)?;
    }
    RunConfig::from_raw(&raw)
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::VerifyTables => commands::verify_tables(),
        Command::Identities { seed, count } => commands::identities(*seed, *count),
        Command::Expand { k, alpha, eps, beta } => commands::expand(*k, alpha, eps, beta),
        Command::Boundary { k, alpha, eps } => commands::boundary(*k, alpha, eps),
        Command::Solve { config, overrides } => commands::solve(&load(config, overrides)?),
        Command::Sweep {
            config,
            out,
            eps,
            overrides,
        } => {
            let mut cfg = load(config, overrides)?;
            if let Some(list) = eps {
                cfg.eps = parse_eps_list(list)?;
            }
            commands::sweep(&cfg, out)
        }
    }
}
