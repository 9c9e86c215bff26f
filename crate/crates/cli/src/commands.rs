use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hodge4d::boundary::{boundary_report, BoundaryGeometry};
use hodge4d::expansion::{expand_componentwise, Piece, SpatialField};
use hodge4d::poly::integer;
use hodge4d::solver::{epsilon_sweep_with, solve_problem, SweepResult};
use hodge4d::suite::{
    default_expansion_case, default_expansion_checks, double_star_checks, expansion_checks, hodge_table_checks,
    identity_checks, table_params, HODGE_TARGET,
};
use hodge4d::tables::{HodgeTableEntry, HODGE_TABLE};
use hodge4d::{MaterialParams, PolyField, Rational, SolverError};

use crate::config::RunConfig;
use crate::report::{CheckRecord, Report, Table};
use crate::CliError;

pub fn verify_tables() -> Result<Report, CliError> {
    verify_tables_with(&HODGE_TABLE)
}

/// The table suite against a caller-supplied star table.
pub fn verify_tables_with(table: &[HodgeTableEntry]) -> Result<Report, CliError> {
    let m = table_params();
    let mut report = Report::new("verify-tables");
    let hodge = hodge_table_checks(table, &m);
    let expansion = default_expansion_checks().map_err(|e| CliError::Failed(e.to_string()))?;
    let double = double_star_checks(&m);
    let passed = |cs: &[hodge4d::suite::Check]| cs.iter().filter(|c| !c.failed()).count();
    report.fact("parameters", format!("α = {}, ε = {}", m.alpha(), m.epsilon()));
    report.fact("Hodge entries", format!("{}/{} pass", passed(&hodge), hodge.len()));
    report.fact("double-star scalings", format!("{}/{} pass", passed(&double), double.len()));
    report.fact("expansion cells", format!("{}/{} pass", passed(&expansion), expansion.len()));
    report.checks(hodge.iter().chain(&double).chain(&expansion));
    debug_assert!(hodge.iter().all(|c| c.target == HODGE_TARGET));
    Ok(report)
}

pub fn identities(seed: u64, count: usize) -> Result<Report, CliError> {
    if count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let mut report = Report::new("identities");
    report.fact("seed", seed);
    report.fact("instances per family", count);
    report.checks(&identity_checks(seed, count));
    Ok(report)
}

fn parse_rational(name: &str, text: &str) -> Result<Rational, CliError> {
    text.parse::<PolyField>()
        .ok()
        .and_then(|p| p.as_constant())
        .ok_or_else(|| CliError::Usage(format!("--{name} `{text}` is not a rational constant")))
}

/// Parses `"b1, b2, b3"`, three polynomials in `x, y, z, t`.
pub fn parse_beta(text: &str) -> Result<[PolyField; 3], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("--beta needs three comma-separated components, got `{text}`")));
    }
    let mut out = [PolyField::zero(), PolyField::zero(), PolyField::zero()];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|e| CliError::Usage(format!("--beta: {e}")))?;
    }
    Ok(out)
}

fn params(alpha: &str, eps: &str, beta: [PolyField; 3]) -> Result<MaterialParams, CliError> {
    MaterialParams::new(parse_rational("alpha", alpha)?, parse_rational("eps", eps)?, beta)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn check_degree(k: usize, max: usize) -> Result<(), CliError> {
    if k > max {
        return Err(CliError::Usage(format!("--k must lie in 0..={max}, got {k}")));
    }
    Ok(())
}

fn describe_field(field: &SpatialField) -> String {
    match field {
        SpatialField::Scalar(u) => u.to_string(),
        SpatialField::Vector([a, b, c]) => format!("({a}, {b}, {c})"),
    }
}

pub fn expand(k: usize, alpha: &str, eps: &str, beta: &str) -> Result<Report, CliError> {
    check_degree(k, 4)?;
    let m = params(alpha, eps, parse_beta(beta)?)?;
    let (field, _) = default_expansion_case(k);
    let run = |e: hodge4d::ConvDiffError| CliError::Failed(e.to_string());
    let expansion = expand_componentwise(k, &field, &m).map_err(run)?;
    let checks = expansion_checks(k, &field, &m).map_err(run)?;

    let mut report = Report::new("expand");
    report.fact("degree", k);
    report.fact("field", describe_field(&field));
    report.fact("α", m.alpha());
    report.fact("ε", m.epsilon());
    let [b1, b2, b3] = m.beta();
    report.fact("β", format!("({b1}, {b2}, {b3})"));
    let mut header = vec!["basis"];
    header.extend(Piece::ALL.iter().map(|p| p.label()));
    let mut table = Table::new(format!("unified operator, k = {k}"), &header);
    for row in &expansion.rows {
        let mut cells = vec![row.basis.clone()];
        cells.extend(row.cells.iter().map(|c| c.computed.to_string()));
        table.push(cells);
    }
    report.tables.push(table);
    report.checks(&checks);
    Ok(report)
}

fn poly(s: &str) -> PolyField {
    s.parse().expect("valid literal")
}

pub fn boundary(k: usize, alpha: &str, eps: &str) -> Result<Report, CliError> {
    check_degree(k, 3)?;
    let zero = || [PolyField::zero(), PolyField::zero(), PolyField::zero()];
    let m = params(alpha, eps, zero())?;
    let geometry = BoundaryGeometry {
        normal: [poly("1"), poly("-2"), poly("x")],
        t0: integer(0),
        t_final: integer(1),
    };
    let (u, u0) = if k == 1 || k == 2 {
        (
            SpatialField::Vector([poly("x*t^2"), poly("y - t"), poly("z*x*t")]),
            SpatialField::Vector([poly("x"), poly("y"), poly("1")]),
        )
    } else {
        (SpatialField::Scalar(poly("x*y*t^2 + z*t")), SpatialField::Scalar(poly("x*y")))
    };
    let r = boundary_report(k, &u, &u0, &m, &geometry).map_err(|e| CliError::Failed(e.to_string()))?;

    let mut report = Report::new("boundary");
    report.fact("degree", k);
    report.fact("field", describe_field(&u));
    report.fact("initial data", describe_field(&u0));
    let [n1, n2, n3] = &geometry.normal;
    report.fact("spatial normal", format!("({n1}, {n2}, {n3})"));
    report.fact("time interval", format!("[{}, {}]", geometry.t0, geometry.t_final));
    for c in r.conditions() {
        let mut table = Table::new(
            format!("{}: {}", c.name, c.summary),
            &["basis", "trace coefficient", "classical quantity"],
        );
        for row in &c.rows {
            table.push(vec![row.basis.clone(), row.computed.to_string(), row.classical.to_string()]);
        }
        report.tables.push(table);
        let detail = match c.orientation() {
            Some(s) if c.applicable => format!("{} (trace = {}classical)", c.summary, if s < 0 { "−" } else { "+" }),
            Some(_) => c.summary.to_string(),
            None => {
                let bad: Vec<&str> = c
                    .rows
                    .iter()
                    .filter(|r| r.computed != r.classical && r.computed != -&r.classical)
                    .map(|r| r.basis.as_str())
                    .collect();
                format!("trace does not match the classical quantity on {}", bad.join(", "))
            }
        };
        report.check(CheckRecord {
            id: format!("k={k} {}", c.name),
            target: "boundary condition reduction".into(),
            outcome: if c.reduces() { "pass" } else { "fail" },
            detail,
        });
    }
    Ok(report)
}

fn solver_error(e: SolverError) -> CliError {
    match e {
        SolverError::NonPositiveEpsilon(_)
        | SolverError::NonPositiveAlpha { .. }
        | SolverError::GridTooSmall(_)
        | SolverError::InvalidGrid(_)
        | SolverError::InvalidEpsilonList(_) => CliError::Usage(e.to_string()),
        _ => CliError::Failed(e.to_string()),
    }
}

fn describe_problem(report: &mut Report, cfg: &RunConfig) {
    let s = &cfg.sources;
    report.fact("scheme", cfg.problem.scheme);
    report.fact("alpha(x)", s.alpha.source());
    report.fact("beta(x)", s.beta.source());
    report.fact("source(x, t)", s.source.source());
    report.fact("dirichlet(x, t)", s.dirichlet.source());
    report.fact("terminal_flux(x)", s.terminal_flux.source());
    let g = &cfg.grid;
    report.fact(
        "grid",
        format!(
            "{} × {} cells on [0, {}] × [{}, {}]",
            g.columns() - 1,
            g.levels() - 1,
            g.lx(),
            g.t0(),
            g.t_final()
        ),
    );
}

pub fn solve(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new("solve");
    describe_problem(&mut report, cfg);
    report.fact("epsilon", cfg.problem.epsilon);
    let u = solve_problem(&cfg.problem, &cfg.grid).map_err(solver_error)?;
    let top = cfg.grid.levels() - 1;
    report.fact("min u", format!("{:.6e}", u.min()));
    report.fact("max u", format!("{:.6e}", u.max()));
    report.fact("‖u(·, T)‖_L2", format!("{:.6e}", u.l2_at(top)));
    if let (Some(exact), Some(source)) = (&cfg.problem.exact, &cfg.sources.exact) {
        report.fact("exact(x, t)", source.source());
        report.fact("space-time L2 error", format!("{:.6e}", u.l2_error(|x, t| exact(x, t))));
        report.fact("max nodal error", format!("{:.6e}", u.max_error(|x, t| exact(x, t))));
    }
    let mut table = Table::new("solution at t = T", &["x", "u(x, T)"]);
    let columns = cfg.grid.columns();
    let stride = (columns - 1).div_ceil(10).max(1);
    for i in (0..columns).step_by(stride).chain(std::iter::once(columns - 1)) {
        table.push(vec![format!("{:.4}", cfg.grid.x(i)), format!("{:.6e}", u.at(i, top))]);
        if i == columns - 1 {
            break;
        }
    }
    report.tables.push(table);
    Ok(report)
}

/// Exact round-trip formatting with 17 significant digits.
fn number(v: f64) -> String {
    format!("{v:.16e}")
}

/// Local slope between consecutive rows, then the least-squares slope in the
/// summary row.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from("epsilon,l2_error_T,energy_integral,slope_estimate\n");
    for (i, p) in result.points.iter().enumerate() {
        let local = match i.checked_sub(1).map(|j| result.points[j]) {
            Some(q) => number((p.l2_error_final / q.l2_error_final).ln() / (p.epsilon / q.epsilon).ln()),
            None => String::new(),
        };
        writeln!(
            out,
            "{},{},{},{local}",
            number(p.epsilon),
            number(p.l2_error_final),
            number(p.energy_integral)
        )
        .unwrap();
    }
    let fit = result.slope().map(number).unwrap_or_default();
    writeln!(out, "fit,,,{fit}").unwrap();
    out
}

fn sweep_table(result: &SweepResult) -> Table {
    let mut table = Table::new("", &["epsilon", "l2_error_T", "energy_integral", "local slope"]);
    for (i, p) in result.points.iter().enumerate() {
        let local = i
            .checked_sub(1)
            .map(|j| {
                let q = result.points[j];
                format!("{:.3}", (p.l2_error_final / q.l2_error_final).ln() / (p.epsilon / q.epsilon).ln())
            })
            .unwrap_or_default();
        table.push(vec![
            format!("{:.4e}", p.epsilon),
            format!("{:.6e}", p.l2_error_final),
            format!("{:.6e}", p.energy_integral),
            local,
        ]);
    }
    let fit = result.fit.map_or("n/a".to_string(), |f| {
        format!("{:.3} (log residual {:.1e})", f.slope, f.residual)
    });
    table.push(vec!["fit".into(), String::new(), String::new(), fit]);
    table
}

/// Where the human-readable table goes: next to the CSV with extension `txt`.
pub fn text_path(csv: &Path) -> PathBuf {
    csv.with_extension("txt")
}

pub fn sweep(cfg: &RunConfig, out: &Path) -> Result<Report, CliError> {
    if cfg.eps.is_empty() {
        return Err(CliError::Usage("the epsilon list is empty; set sweep.eps or pass --eps".into()));
    }
    let mut report = Report::new("sweep");
    describe_problem(&mut report, cfg);
    let result = epsilon_sweep_with(&cfg.problem, &cfg.grid, &cfg.eps, cfg.sweep).map_err(solver_error)?;
    if let Some(p) = result.floor_probe {
        report.fact(
            "floor probe",
            format!(
                "ε = {:e}: error {:.6e} vs {:.6e} with twice the time cells ({:.1}% change)",
                p.epsilon,
                p.coarse,
                p.fine,
                100.0 * p.relative_change()
            ),
        );
    }
    let table = sweep_table(&result);
    let txt = text_path(out);
    let write = |path: &Path, text: &str| {
        std::fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
    };
    write(out, &sweep_csv(&result))?;
    write(&txt, &table.render())?;
    report.fact("csv", out.display());
    report.fact("table", txt.display());
    if let Some(s) = result.slope() {
        report.fact("fitted slope", format!("{s:.4}"));
    }
    report.tables.push(table);
    report.check(CheckRecord {
        id: "l2_error_T decreases along the epsilon list".into(),
        target: "energy estimate in ε".into(),
        outcome: if result.is_monotone() { "pass" } else { "fail" },
        detail: result
            .points
            .windows(2)
            .find(|w| w[1].l2_error_final >= w[0].l2_error_final)
            .map(|w| format!("error grows from ε = {:e} to ε = {:e}", w[0].epsilon, w[1].epsilon))
            .unwrap_or_default(),
    });
    Ok(report)
}
