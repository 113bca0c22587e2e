//! Versioned analysis reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "groupalg/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub outcome: String,
    #[serde(default)]
    pub holds: Option<bool>,
    #[serde(default)]
    pub detail: Value,
}

impl Check {
    pub fn new<T: Serialize>(name: &str, outcome: impl ToString, holds: Option<bool>, detail: &T) -> Self {
        Check {
            name: name.to_string(),
            outcome: outcome.to_string(),
            holds,
            detail: serde_json::to_value(detail).unwrap_or(Value::Null),
        }
    }

    pub fn flag<T: Serialize>(name: &str, holds: bool, detail: &T) -> Self {
        Self::new(name, holds, Some(holds), detail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    /// SHA-256 over the input files, in argument order.
    pub input_digest: String,
    pub seed: Option<u64>,
    pub depth: Option<usize>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.len() as u64).to_le_bytes());
        h.update(i);
    }
    h.finalize().iter().map(|b| format!("{:02x}", b)).collect()
}

impl Report {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            input_digest: digest(inputs),
            seed: None,
            depth: None,
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report json")
    }

    /// One `name: outcome` line per check; failed checks also print their
    /// detail.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{}: {}\n", c.name, c.outcome));
            if c.holds == Some(false) && !c.detail.is_null() {
                out.push_str(&format!("  witness: {}\n", c.detail));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("graph", &[b"digraph { a -> a; }"]);
        r.push(Check::flag("cofinal", true, &()));
        r.push(Check::new("verdict", "not_simple", Some(false), &vec![1, 2]));
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.input_digest.len(), 64);
        assert!(r.to_text().contains("verdict: not_simple\n  witness: [1,2]"));
    }
}
