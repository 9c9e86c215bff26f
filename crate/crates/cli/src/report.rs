//! Command results, rendered as text or JSON.

use std::fmt::Write as _;

use hodge4d::suite::{Check, Outcome};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub target: String,
    pub outcome: &'static str,
    pub detail: String,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        Self {
            id: c.id.clone(),
            target: c.target.to_string(),
            outcome: match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "fail",
                Outcome::Value => "value",
            },
            detail: c.detail.clone(),
        }
    }
}

impl CheckRecord {
    pub fn failed(&self) -> bool {
        self.outcome == "fail"
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Self {
            title: title.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Left-aligned columns separated by two spaces.
    pub fn render(&self) -> String {
        let width = |col: usize| {
            std::iter::once(&self.header)
                .chain(&self.rows)
                .filter_map(|r| r.get(col))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.header.len()).map(width).collect();
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    let pad = widths.get(i).copied().unwrap_or(0).saturating_sub(cell.chars().count());
                    s.push_str(cell);
                    s.push_str(&" ".repeat(pad + 2));
                }
            }
            s.trim_end().to_string()
        };
        let mut out = String::new();
        if !self.title.is_empty() {
            writeln!(out, "{}", self.title).unwrap();
        }
        writeln!(out, "{}", line(&self.header)).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", line(row)).unwrap();
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub facts: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            passed: true,
            ..Self::default()
        }
    }

    pub fn fact(&mut self, name: &str, value: impl ToString) {
        self.facts.push((name.to_string(), value.to_string()));
    }

    pub fn check(&mut self, record: CheckRecord) {
        if record.failed() {
            self.passed = false;
        }
        self.checks.push(record);
    }

    pub fn checks<'a>(&mut self, checks: impl IntoIterator<Item = &'a Check>) {
        for c in checks {
            self.check(c.into());
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, value) in &self.facts {
            writeln!(out, "{name}: {value}").unwrap();
        }
        for table in &self.tables {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&table.render());
        }
        if !self.checks.is_empty() {
            if !out.is_empty() {
                out.push('\n');
            }
            for c in &self.checks {
                write!(out, "[{}] {} ({})", c.outcome, c.id, c.target).unwrap();
                if !c.detail.is_empty() {
                    write!(out, ": {}", c.detail).unwrap();
                }
                out.push('\n');
            }
            let failed = self.failures().count();
            let graded = self.checks.iter().filter(|c| c.outcome != "value").count();
            writeln!(out, "{} of {graded} checks passed", graded - failed).unwrap();
        }
        writeln!(out, "{}: {}", self.command, if self.passed { "PASS" } else { "FAIL" }).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
