//! JSON run reports.
//!
//! A report lists the effective tolerances and one entry per check. Each check
//! carries the numbers its verdict is computed from, so `pass` can be
//! re-derived from the file alone: `max_abs <= tolerance`, and when both
//! `order_estimate` and `min_order` are present, `order_estimate >= min_order`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub max_abs: f64,
    pub l2: Option<f64>,
    pub order_estimate: Option<f64>,
    pub tolerance: f64,
    pub min_order: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, max_abs: f64, tolerance: f64) -> Self {
        let mut c = Self {
            name: name.into(),
            max_abs,
            l2: None,
            order_estimate: None,
            tolerance,
            min_order: None,
            pass: false,
        };
        c.pass = c.recompute();
        c
    }

    pub fn with_l2(mut self, l2: f64) -> Self {
        self.l2 = Some(l2);
        self
    }

    pub fn with_order(mut self, order: Option<f64>, min_order: f64) -> Self {
        self.order_estimate = order;
        self.min_order = Some(min_order);
        self.pass = self.recompute();
        self
    }

    /// The verdict implied by the stored numbers.
    pub fn recompute(&self) -> bool {
        let value_ok = self.max_abs <= self.tolerance;
        let order_ok = match (self.order_estimate, self.min_order) {
            (Some(o), Some(m)) => o >= m,
            _ => true,
        };
        value_ok && order_ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub tolerances: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub properties: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    /// Empty report; `inputs` is hashed into `inputs_digest`.
    pub fn new(command: &str, inputs: &Value) -> Self {
        Self {
            command: command.to_string(),
            inputs_digest: digest(inputs.to_string().as_bytes()),
            tolerances: BTreeMap::new(),
            checks: Vec::new(),
            properties: BTreeMap::new(),
            warnings: Vec::new(),
            wall_time_s: None,
        }
    }

    pub fn tolerance(&mut self, name: &str, value: f64) -> f64 {
        self.tolerances.insert(name.to_string(), value);
        value
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn property(&mut self, name: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.properties.insert(name.to_string(), v);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        super::write_atomic(path, self.to_json()?.as_bytes())
    }
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_follow_numbers() {
        assert!(Check::new("a", 1e-13, 1e-12).pass);
        assert!(!Check::new("a", 1e-11, 1e-12).pass);
        assert!(!Check::new("a", 0.0, 1.0).with_order(Some(1.5), 1.9).pass);
        assert!(Check::new("a", 0.0, 1.0).with_order(None, 1.9).pass);
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
        let r = Report::new("x", &serde_json::json!({"a": 1}));
        assert_eq!(r.inputs_digest, Report::new("x", &serde_json::json!({"a": 1})).inputs_digest);
    }
}
