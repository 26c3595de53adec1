//! Versioned JSON run reports.
//!
//! The body of a report is a pure function of command, inputs and seed.
//! Wall time is kept outside the body so that two runs compare equal byte
//! for byte.

use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct CheckVerdict {
    pub id: String,
    pub claim: String,
    pub passed: bool,
    /// Certificates on success, counterexamples or the error on failure.
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub field: String,
    pub checks: Vec<CheckVerdict>,
    pub passed: bool,
    #[serde(skip)]
    pub wall_time: Option<Duration>,
}

impl RunReport {
    pub fn new(command: &str, field: &str, seed: Option<u64>) -> RunReport {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: BTreeMap::new(),
            seed,
            field: field.to_string(),
            checks: Vec::new(),
            passed: true,
            wall_time: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> RunReport {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, check: CheckVerdict) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    /// Orders checks by id; used after concurrent runs.
    pub fn sort_checks(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    /// The deterministic body as pretty JSON.
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The body plus timing, for writing to disk.
    pub fn to_json_with_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let (Some(t), Value::Object(map)) = (self.wall_time, &mut v) {
            map.insert("timing".into(), json!({ "wall_time_ms": t.as_millis() as u64 }));
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timing_stays_out_of_body() {
        let mut a = RunReport::new("hess", "q", Some(3)).input("f", "x0^3");
        a.push(CheckVerdict {
            id: "one".into(),
            claim: "c".into(),
            passed: true,
            detail: json!({}),
        });
        let mut b = a.clone();
        a.wall_time = Some(Duration::from_millis(5));
        b.wall_time = Some(Duration::from_millis(900));
        assert_eq!(a.body_json(), b.body_json());
        assert!(!a.body_json().contains("timing"));
        assert_eq!(a.to_json_with_timing()["timing"]["wall_time_ms"], 5);
    }

    #[test]
    fn failure_propagates() {
        let mut r = RunReport::new("x", "q", None);
        assert_eq!(r.exit_code(), 0);
        r.push(CheckVerdict {
            id: "b".into(),
            claim: String::new(),
            passed: false,
            detail: Value::Null,
        });
        r.push(CheckVerdict {
            id: "a".into(),
            claim: String::new(),
            passed: true,
            detail: Value::Null,
        });
        r.sort_checks();
        assert_eq!(r.checks[0].id, "a");
        assert_eq!(r.exit_code(), 1);
    }
}
