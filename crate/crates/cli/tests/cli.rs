use std::path::Path;
use std::process::{Command, Output};

use hodge4d::tables::HODGE_TABLE;
use hodge4d_cli::commands::verify_tables_with;

const HEAT: &str = "\
[problem]
scheme = centered
alpha = 1
beta = 0.5
dirichlet = sin(pi*x)

[grid]
cells_x = 16
cells_t = 400

[sweep]
eps = 0.1, 0.05, 0.025
";

fn hodge4d(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge4d"))
        .args(args)
        .env_remove("HODGE4D_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("problem.ini");
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_tables_passes_every_entry() {
    let o = hodge4d(&["verify-tables"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.contains("Hodge entries: 32/32 pass"), "{text}");
    assert!(text.contains("[pass] k=1 row dx column total"), "{text}");
}

#[test]
fn corrupted_sign_is_named() {
    let mut table = HODGE_TABLE;
    let (sign, output) = table[4].star;
    table[4].star = (-sign, output);
    let report = verify_tables_with(&table).unwrap();
    assert_eq!(report.exit_code(), 1);
    let failed: Vec<_> = report.failures().collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].id.starts_with("★(dt)"), "{}", failed[0].id);
    assert!(failed[0].detail.contains("expected"));
}

#[test]
fn identities_are_reproducible() {
    let a = hodge4d(&["identities", "--seed", "42", "--count", "20", "--format", "json"]);
    let b = hodge4d(&["identities", "--seed", "42", "--count", "20", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let json: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let checks = json["checks"].as_array().unwrap();
    let constraint = checks
        .iter()
        .find(|c| c["id"] == "constraint value k=3, u = x + y")
        .unwrap();
    assert_eq!(constraint["outcome"], "value");
    let potential = checks.iter().find(|c| c["id"] == "potential for β = (y, 0, 0)").unwrap();
    assert_eq!(potential["outcome"], "pass");
}

#[test]
fn seed_defaults_to_the_environment() {
    let from_env = Command::new(env!("CARGO_BIN_EXE_hodge4d"))
        .args(["identities", "--count", "5", "--format", "json"])
        .env("HODGE4D_SEED", "7")
        .output()
        .unwrap();
    let json: serde_json::Value = serde_json::from_slice(&from_env.stdout).unwrap();
    assert!(json["facts"].as_array().unwrap().iter().any(|f| f[0] == "seed" && f[1] == "7"));
}

#[test]
fn expand_and_boundary_reports() {
    let o = hodge4d(&["expand", "--k", "2", "--alpha", "2", "--eps", "1/5", "--beta", "1, 0, x"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("24 of 24 checks passed"));
    let o = hodge4d(&["boundary", "--k", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("not applicable"));
    assert_eq!(hodge4d(&["expand", "--k", "7"]).status.code(), Some(2));
    assert_eq!(hodge4d(&["expand", "--k", "1", "--eps", "0"]).status.code(), Some(2));
}

#[test]
fn sweep_csv_is_bit_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), HEAT);
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = hodge4d(&["sweep", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
        (std::fs::read(&out).unwrap(), std::fs::read_to_string(out.with_extension("txt")).unwrap())
    };
    let (a, table) = run("a.csv");
    let (b, _) = run("b.csv");
    assert_eq!(a, b);
    let csv = String::from_utf8(a).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "epsilon,l2_error_T,energy_integral,slope_estimate");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("fit,,,"));
    let errors: Vec<f64> = lines[1..4].iter().map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "{errors:?}");
    assert!(table.contains("fit"));
}

#[test]
fn sweep_rejects_bad_epsilon_lists() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), HEAT);
    let out = dir.path().join("s.csv");
    let out = out.to_str().unwrap();
    let empty = hodge4d(&["sweep", "--config", &cfg, "--out", out, "--eps", ""]);
    assert_eq!(empty.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&empty.stderr).contains("empty"));
    let zero = hodge4d(&["sweep", "--config", &cfg, "--out", out, "--set", "sweep.eps=0.1, 0"]);
    assert_eq!(zero.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&zero.stderr).contains("positive"));
    assert!(!Path::new(out).exists());
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[problem]\nepsilon = 0.1\nalfa = 2\n");
    let o = hodge4d(&["solve", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alfa"));
    let cfg = write_config(dir.path(), HEAT);
    assert_eq!(hodge4d(&["solve", "--config", &cfg, "--set", "problem.epsilon=0"]).status.code(), Some(2));
    assert_eq!(hodge4d(&["solve", "--config", &cfg, "--set", "problem.source=y"]).status.code(), Some(2));
    assert_eq!(hodge4d(&["solve", "--config", "/nonexistent.ini"]).status.code(), Some(2));
    assert_eq!(hodge4d(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn solve_reports_the_error_against_an_exact_solution() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "[problem]\n\
         epsilon = 0.1\n\
         beta = 0.5\n\
         source = pi^2*sin(pi*x)*(1 + t) - 0.5*pi*cos(pi*x)*(1 + t) + sin(pi*x)\n\
         dirichlet = sin(pi*x)*(1 + t)\n\
         terminal_flux = 0.1*sin(pi*x)\n\
         exact = sin(pi*x)*(1 + t)\n\
         [grid]\ncells_x = 32\ncells_t = 32\n",
    );
    let o = hodge4d(&["solve", "--config", &cfg, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let facts = json["facts"].as_array().unwrap();
    let error: f64 = facts
        .iter()
        .find(|f| f[0] == "space-time L2 error")
        .unwrap()[1]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!(error > 0.0 && error < 2e-3, "{error}");
}
