use serde::Serialize;

use monogenic::linalg::Check;
use monogenic::scalar::display_scalar;
use monogenic::{Matrix, Scalar};

/// A finished command: both renderings plus the process exit status.
pub struct Output {
    pub json: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub exit: i32,
    /// Printed to stderr after the report.
    pub notice: Option<String>,
}

impl Output {
    pub fn new<T: Serialize>(doc: &T, header: Vec<&'static str>, rows: Vec<Vec<String>>, exit: i32) -> Self {
        let json = serde_json::to_string_pretty(doc).expect("report serializes");
        Output { json, header, rows, exit, notice: None }
    }

    pub fn with_notice(mut self, notice: impl Into<String>) -> Self {
        self.notice = Some(notice.into());
        self
    }

    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
    }
}

#[derive(Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub status: &'static str,
    pub value: String,
    pub expected: String,
    pub source: String,
}

pub fn check_rows(checks: &[Check]) -> Vec<CheckRow> {
    checks
        .iter()
        .map(|c| CheckRow {
            name: c.name.clone(),
            status: if c.passed { "pass" } else { "fail" },
            value: c.value.clone(),
            expected: c.expected.clone(),
            source: c.source.clone(),
        })
        .collect()
}

pub const CHECK_HEADER: [&str; 5] = ["name", "status", "value", "expected", "source"];

pub fn check_csv(checks: &[Check]) -> Vec<Vec<String>> {
    check_rows(checks)
        .into_iter()
        .map(|r| vec![r.name, r.status.to_string(), r.value, r.expected, r.source])
        .collect()
}

pub fn status(checks: &[Check]) -> i32 {
    if checks.iter().all(|c| c.passed) {
        0
    } else {
        1
    }
}

pub fn matrix_strings<S: Scalar>(m: &Matrix<S>) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(display_scalar).collect()).collect()
}
