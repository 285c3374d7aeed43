//! Reports are built as JSON; CSV and aligned tables are rendered from that JSON.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::job::{Format, JobSpec};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }

    /// A check whose computation failed outright.
    pub fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Check::new(name, false, format!("error: {}", err))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub job: JobSpec,
    pub data: Value,
    pub table: Table,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(job: JobSpec) -> Self {
        Report {
            job,
            data: json!({}),
            table: Table::default(),
            checks: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failing(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "job": self.job,
            "data": self.data,
            "table": self.table,
            "checks": self.checks,
            "all_pass": self.all_pass(),
        })
    }

    pub fn render(&self) -> String {
        render(&self.to_json(), self.job.format)
    }
}

pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
        Format::Table => render_table(report),
    }
}

fn table_parts(report: &Value) -> (Vec<String>, Vec<Vec<String>>) {
    let strings = |v: &Value| -> Vec<String> {
        v.as_array()
            .map(|a| a.iter().map(|x| x.as_str().unwrap_or_default().to_string()).collect())
            .unwrap_or_default()
    };
    let table = &report["table"];
    let columns = strings(&table["columns"]);
    let rows = table["rows"]
        .as_array()
        .map(|rs| rs.iter().map(strings).collect())
        .unwrap_or_default();
    (columns, rows)
}

fn check_rows(report: &Value) -> Vec<Vec<String>> {
    report["checks"]
        .as_array()
        .map(|cs| {
            cs.iter()
                .map(|c| {
                    vec![
                        c["name"].as_str().unwrap_or_default().to_string(),
                        if c["pass"].as_bool() == Some(true) { "pass" } else { "FAIL" }.to_string(),
                        c["detail"].as_str().unwrap_or_default().to_string(),
                    ]
                })
                .collect()
        })
        .unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",")
}

fn render_csv(report: &Value) -> String {
    let (columns, rows) = table_parts(report);
    let mut out = String::new();
    if !columns.is_empty() {
        out.push_str(&csv_line(&columns));
        out.push('\n');
        for r in &rows {
            out.push_str(&csv_line(r));
            out.push('\n');
        }
        out.push('\n');
    }
    out.push_str("check,status,detail\n");
    for r in check_rows(report) {
        out.push_str(&csv_line(&r));
        out.push('\n');
    }
    out
}

fn aligned(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = columns.iter().map(|c| c.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{:<width$}", c, width = w))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    let _ = writeln!(out, "{}", line(columns));
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    let _ = writeln!(out, "{}", line(&rule));
    for r in rows {
        let _ = writeln!(out, "{}", line(r));
    }
    out
}

fn render_table(report: &Value) -> String {
    let mut out = String::new();
    let job = &report["job"];
    let _ = writeln!(
        out,
        "{} {}",
        job["command"].as_str().unwrap_or_default(),
        job["group"]
            .as_array()
            .map(|g| g.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default()
    );
    let (columns, rows) = table_parts(report);
    if !columns.is_empty() {
        out.push('\n');
        out.push_str(&aligned(&columns, &rows));
    }
    let checks = check_rows(report);
    if !checks.is_empty() {
        out.push('\n');
        let cols = vec!["check".to_string(), "status".to_string(), "detail".to_string()];
        out.push_str(&aligned(&cols, &checks));
    }
    let _ = writeln!(
        out,
        "\n{}",
        if report["all_pass"].as_bool() == Some(true) { "all checks pass" } else { "SOME CHECKS FAILED" }
    );
    out
}
