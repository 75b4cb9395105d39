use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: Value,
    pub checks: Vec<Check>,
    pub details: Value,
}

fn to_value<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

impl Report {
    pub fn new(suite: &str, params: impl Serialize) -> Self {
        Self { suite: suite.to_string(), params: to_value(params), checks: Vec::new(), details: Value::Null }
    }

    /// Passes iff `expected` and `actual` serialize to the same value.
    pub fn compare(&mut self, id: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> bool {
        let (expected, actual) = (to_value(expected), to_value(actual));
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        self.checks.push(Check { id: id.into(), status, expected, actual, note: None });
        status == Status::Pass
    }

    pub fn holds(&mut self, id: impl Into<String>, ok: bool) -> bool {
        self.compare(id, true, ok)
    }

    /// A check reported with its outcome but excluded from the exit status.
    pub fn known_conflict(&mut self, id: impl Into<String>, actual: impl Serialize, note: &str) {
        self.checks.push(Check {
            id: id.into(),
            status: Status::Skipped,
            expected: Value::Bool(true),
            actual: to_value(actual),
            note: Some(note.to_string()),
        });
    }

    pub fn set_details(&mut self, details: impl Serialize) {
        self.details = to_value(details);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Sorted-key JSON, or one CSV row per check.
pub fn render(report: &Report, format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Json => {
            // serde_json's default map is ordered by key
            let value = to_value(report);
            let mut out = serde_json::to_vec_pretty(&value).map_err(|e| e.to_string())?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["suite", "id", "status", "expected", "actual"]).map_err(|e| e.to_string())?;
            for c in &report.checks {
                let status = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                };
                w.write_record([
                    report.suite.as_str(),
                    c.id.as_str(),
                    status,
                    &c.expected.to_string(),
                    &c.actual.to_string(),
                ])
                .map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

pub fn emit(report: &Report, format: Format, out: Option<&Path>) -> Result<(), String> {
    let bytes = render(report, format)?;
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(&bytes).map_err(|e| format!("stdout: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let mut r = Report::new("demo", serde_json::json!({"p": 5, "l": 3}));
        r.compare("x", 1, 1);
        let text = String::from_utf8(render(&r, Format::Json).unwrap()).unwrap();
        let pos = |k: &str| text.find(k).unwrap();
        assert!(pos("\"checks\"") < pos("\"details\"") && pos("\"details\"") < pos("\"params\""));
        assert!(pos("\"l\"") < pos("\"p\""));
    }

    #[test]
    fn statuses() {
        let mut r = Report::new("demo", ());
        assert!(r.passed());
        r.known_conflict("k", false, "documented");
        assert!(r.passed());
        assert!(!r.compare("y", 1, 2));
        assert!(!r.passed());
        let csv = String::from_utf8(render(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.contains("demo,y,fail,1,2"));
    }
}
