use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub duration_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: u32,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (seed {}, samples {})\n", self.suite, self.seed, self.samples);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let _ = write!(out, "{tag}  {}", c.name);
            if c.duration_ms > 0 {
                let _ = write!(out, "  [{} ms]", c.duration_ms);
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                if c.status == Status::Fail || w.get("verdict").is_some() {
                    let _ = writeln!(out, "      {w}");
                }
            }
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_is_omitted_when_absent() {
        let r = CheckRecord { name: "x".into(), status: Status::Pass, witness: None, duration_ms: 0 };
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"name":"x","status":"pass","duration_ms":0}"#);
    }

    #[test]
    fn round_trip() {
        let r = SuiteReport {
            version: REPORT_VERSION,
            suite: "weights".into(),
            seed: 3,
            samples: 1,
            checks: vec![CheckRecord { name: "a".into(), status: Status::Fail, witness: Some(Value::from("1/2+0/1*i")), duration_ms: 4 }],
        };
        let back: SuiteReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(!back.all_passed());
        assert!(r.to_text().contains("FAIL  a"));
    }
}
