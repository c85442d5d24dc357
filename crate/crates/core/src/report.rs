//! Verdicts and the versioned JSON report format.

use serde::{Deserialize, Serialize};

use crate::exact::{scalar_to_string, Scalar};

pub const REPORT_SCHEMA: &str = "affinoid-report/1";

/// Exact point where a checked identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which identity or component failed.
    pub label: String,
    pub point: Vec<Scalar>,
}

impl Witness {
    pub fn new(label: impl Into<String>, point: Vec<Scalar>) -> Self {
        Witness {
            label: label.into(),
            point,
        }
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            label: self.label.clone(),
            point: self.point.iter().map(scalar_to_string).collect(),
        }
    }
}

/// Outcome of a predicate or identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            pass: true,
            witness: None,
        }
    }

    pub fn fail(witness: Option<Witness>) -> Self {
        Verdict { pass: false, witness }
    }

    pub fn from_bool(pass: bool) -> Self {
        Verdict { pass, witness: None }
    }

    /// First failure of a sequence of checks, or a pass.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Self {
        verdicts.into_iter().find(|v| !v.pass).unwrap_or_else(Verdict::pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub label: String,
    pub point: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub cite: String,
    pub instance: String,
    pub mode: String,
    pub seed: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    /// Sorts entries and fills in the totals.
    pub fn new(suite: impl Into<String>, seed: u64, mut checks: Vec<CheckEntry>) -> Self {
        checks.sort_by(|a, b| (&a.check, &a.instance, &a.mode).cmp(&(&b.check, &b.instance, &b.mode)));
        let passed = checks.iter().filter(|c| c.pass).count();
        Report {
            schema: REPORT_SCHEMA.to_string(),
            suite: suite.into(),
            seed,
            passed,
            failed: checks.len() - passed,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn report_is_sorted_and_counted() {
        let entry = |check: &str, pass| CheckEntry {
            check: check.into(),
            cite: "c".into(),
            instance: "i".into(),
            mode: "exact".into(),
            seed: 0,
            pass,
            witness: None,
        };
        let r = Report::new("full", 0, vec![entry("b", true), entry("a", false)]);
        assert_eq!(r.checks[0].check, "a");
        assert_eq!((r.passed, r.failed), (1, 1));
        assert!(r.to_json().contains(REPORT_SCHEMA));
    }

    #[test]
    fn witness_serialises_exactly() {
        let w = Witness::new("lhs-rhs", vec![rat(-1, 3), rat(2, 1)]);
        assert_eq!(w.to_json().point, vec!["-1/3", "2"]);
    }
}
