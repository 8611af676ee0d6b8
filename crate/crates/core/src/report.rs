//! Verification reports: one named check per law, with case counts and
//! a concrete witness for the first failing case.

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Vacuous,
    HypothesisUnmet,
    Observation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub cases: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Json>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: u64) -> Self {
        Check { name: name.into(), status: Status::Pass, cases, counterexample: None, note: None }
    }

    pub fn fail(name: impl Into<String>, cases: u64, witness: Json) -> Self {
        Check { name: name.into(), status: Status::Fail, cases, counterexample: Some(witness), note: None }
    }

    pub fn with_status(name: impl Into<String>, status: Status, cases: u64, note: impl Into<String>) -> Self {
        assert_ne!(status, Status::Fail, "failed checks must carry a witness");
        Check { name: name.into(), status, cases, counterexample: None, note: Some(note.into()) }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Accumulates the cases of a single check, keeping the first failure.
#[derive(Debug)]
pub struct Tally {
    name: String,
    cases: u64,
    failures: u64,
    failure: Option<Json>,
}

impl Tally {
    pub fn new(name: impl Into<String>) -> Self {
        Tally { name: name.into(), cases: 0, failures: 0, failure: None }
    }

    /// Records one case. The witness is only built for the first failure.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> Json) -> bool {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.failure.is_none() {
                self.failure = Some(witness());
            }
        }
        ok
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    pub fn cases(&self) -> u64 {
        self.cases
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Folds in a tally computed independently (e.g. on another chunk).
    /// Chunks must be merged in case order to keep the reported witness stable.
    pub fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failures += other.failures;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    pub fn finish(self) -> Check {
        match self.failure {
            Some(w) => Check::fail(self.name, self.cases, w),
            None if self.cases == 0 => Check::with_status(self.name, Status::Vacuous, 0, "no applicable cases"),
            None => Check::pass(self.name, self.cases),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub max_size: usize,
    pub cap: u64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params { max_size: 2, cap: crate::towers::DEFAULT_CAP, samples: 256, seed: 42 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub quantale: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub overall: Overall,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, quantale: impl Into<String>, params: Params) -> Self {
        VerificationReport {
            suite: suite.into(),
            quantale: quantale.into(),
            params,
            checks: Vec::new(),
            overall: Overall::Pass,
        }
    }

    pub fn push(&mut self, check: Check) {
        if check.is_fail() {
            self.overall = Overall::Fail;
        }
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.overall == Overall::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.is_fail())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary, one line per check.
    pub fn summary(&self) -> String {
        let mut out = format!("suite {} on {}\n", self.suite, self.quantale);
        for c in &self.checks {
            let status = serde_json::to_value(c.status).unwrap();
            out.push_str(&format!("  {:<48} {:<16} {:>10} cases", c.name, status.as_str().unwrap_or("?"), c.cases));
            if let Some(note) = &c.note {
                out.push_str(&format!("  ({note})"));
            }
            out.push('\n');
            if let Some(w) = &c.counterexample {
                out.push_str(&format!("      witness: {w}\n"));
            }
        }
        out.push_str(match self.overall {
            Overall::Pass => "overall: pass\n",
            Overall::Fail => "overall: fail\n",
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tally_keeps_first_witness() {
        let mut t = Tally::new("law");
        t.case(true, || json!(0));
        t.case(false, || json!(1));
        t.case(false, || json!(2));
        let c = t.finish();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.cases, 3);
        assert_eq!(c.counterexample, Some(json!(1)));
    }

    #[test]
    fn empty_tally_is_vacuous() {
        assert_eq!(Tally::new("x").finish().status, Status::Vacuous);
    }

    #[test]
    fn overall_tracks_failures() {
        let mut r = VerificationReport::new("s", "q", Params::default());
        r.push(Check::pass("a", 1));
        assert!(r.passed());
        r.push(Check::with_status("b", Status::HypothesisUnmet, 0, "needs commutativity"));
        assert!(r.passed());
        r.push(Check::fail("c", 1, json!({"x": 1})));
        assert!(!r.passed());
        let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
