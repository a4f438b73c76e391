//! Verification reports: one `{invariant, max_residual, tolerance, pass}` record per check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub invariant: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `max_residual ≤ tolerance` (and is not NaN).
    pub fn at_most(invariant: impl Into<String>, max_residual: f64, tolerance: f64) -> Self {
        Check { invariant: invariant.into(), max_residual, tolerance, pass: max_residual <= tolerance }
    }

    /// Lower bound `value ≥ bound`; the residual is the shortfall.
    pub fn at_least(invariant: impl Into<String>, value: f64, bound: f64) -> Self {
        Check { invariant: invariant.into(), max_residual: (bound - value).max(0.0), tolerance: 0.0, pass: value >= bound }
    }

    /// A yes/no condition; residual 0 when it holds, 1 otherwise.
    pub fn flag(invariant: impl Into<String>, ok: bool) -> Self {
        Check { invariant: invariant.into(), max_residual: if ok { 0.0 } else { 1.0 }, tolerance: 0.0, pass: ok }
    }
}

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    /// Extra measured quantities (lengths, verdicts, margins).
    pub info: BTreeMap<String, serde_json::Value>,
}

impl VerificationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.info.insert(key.into(), v);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.info.extend(other.info);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// JSON document with the schema version, the checks and the info map.
    pub fn to_json(&self, generated_unix: Option<u64>) -> serde_json::Value {
        let mut doc = serde_json::json!({
            "schema": REPORT_SCHEMA,
            "all_pass": self.all_pass(),
            "checks": self.checks,
            "info": self.info,
        });
        if let Some(t) = generated_unix {
            doc["generated_unix"] = t.into();
        }
        doc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails() {
        assert!(!Check::at_most("x", f64::NAN, 1.0).pass);
        assert!(Check::at_most("x", 0.5, 1.0).pass);
    }

    #[test]
    fn json_shape() {
        let mut r = VerificationReport::default();
        r.push(Check::at_most("quadric", 1e-12, 1e-8));
        r.note("verdict", "certified");
        let j = r.to_json(None);
        assert_eq!(j["checks"][0]["invariant"], "quadric");
        assert_eq!(j["checks"][0]["pass"], true);
        assert_eq!(j["all_pass"], true);
        assert!(j.get("generated_unix").is_none());
    }
}
