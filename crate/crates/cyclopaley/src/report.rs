//! Machine-readable run reports: a versioned JSON schema with one
//! `{name, status, expected, actual}` row per check, plus a CSV rendering
//! of the rows for tabular output.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "cyclopaley/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Timeout,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: Value,
    /// Full field descriptor (p, n, modulus, generator) when a field was
    /// built; clique witnesses are only meaningful relative to it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<Value>,
    /// Hex FNV hash of the field descriptor, when a field was built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_hash: Option<String>,
    /// Command-specific payload.
    pub result: Value,
    pub checks: Vec<Check>,
    /// Set when the run aborted on an error instead of producing checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// True when the abort was a resource cap (size cap, induced bound).
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub resource_cap: bool,
    pub wall_ms: u64,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Report {
        Report {
            schema: SCHEMA,
            command: command.to_string(),
            config,
            field: None,
            field_hash: None,
            result: Value::Null,
            checks: Vec::new(),
            error: None,
            resource_cap: false,
            wall_ms: 0,
        }
    }

    pub fn push(
        &mut self,
        name: &str,
        status: Status,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        self.checks.push(Check {
            name: name.to_string(),
            status,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }

    /// Pass/fail row from an equality comparison.
    pub fn check_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        name: &str,
        expected: T,
        actual: T,
    ) {
        let status = if expected == actual {
            Status::Pass
        } else {
            Status::Fail
        };
        self.push(name, status, expected, actual);
    }

    /// Pass/fail row from a boolean predicate.
    pub fn check_that(
        &mut self,
        name: &str,
        holds: bool,
        expected: impl ToString,
        actual: impl ToString,
    ) {
        self.push(
            name,
            if holds { Status::Pass } else { Status::Fail },
            expected,
            actual,
        );
    }

    pub fn fail_with_error(&mut self, err: impl ToString, resource_cap: bool) {
        self.error = Some(err.to_string());
        self.resource_cap = resource_cap;
    }

    pub fn has_failure(&self) -> bool {
        self.error.is_some() && !self.resource_cap
            || self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn has_timeout(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Timeout)
    }

    /// 0 all pass; 1 check failure; 3 timeout; 4 resource cap.
    pub fn exit_code(&self) -> i32 {
        if self.resource_cap {
            4
        } else if self.has_failure() {
            1
        } else if self.has_timeout() {
            3
        } else {
            0
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// CSV rendering: one row per check.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("name,status,expected,actual\n");
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "pass",
                Status::Fail => "fail",
                Status::Skip => "skip",
                Status::Timeout => "timeout",
            };
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_escape(&c.name),
                status,
                csv_escape(&c.expected),
                csv_escape(&c.actual)
            ));
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_precedence() {
        let mut r = Report::new("t", Value::Null);
        assert_eq!(r.exit_code(), 0);
        r.push("a", Status::Pass, 1, 1);
        assert_eq!(r.exit_code(), 0);
        r.push("b", Status::Timeout, 1, "-");
        assert_eq!(r.exit_code(), 3);
        r.push("c", Status::Fail, 1, 2);
        assert_eq!(r.exit_code(), 1);
        r.fail_with_error("cap", true);
        assert_eq!(r.exit_code(), 4);
    }

    #[test]
    fn json_has_schema_and_rows() {
        let mut r = Report::new("demo", serde_json::json!({"p": 5}));
        r.check_eq("omega", 25, 25);
        let v: Value = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["checks"][0]["status"], "pass");
    }

    #[test]
    fn csv_escapes_commas() {
        let mut r = Report::new("demo", Value::Null);
        r.push("set {0,1,3}", Status::Pass, "a,b", "a,b");
        let csv = r.to_csv_string();
        assert!(csv.contains("\"set {0,1,3}\""));
    }
}
