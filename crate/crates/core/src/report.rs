//! Machine-readable verification reports.
//!
//! Every verification command produces one report: a list of named checks,
//! each passing, failing (with a witness), or skipped, plus a summary whose
//! counts partition the checks. Reports serialize to JSON under the
//! `braidcover/1` schema.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "braidcover/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// One named verification check. Failing checks always carry a witness;
/// passing checks may carry one (e.g. recorded nontriviality witnesses).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates checks and finalizes them into a deterministic report:
/// checks sorted by name, summary recomputed from the partition.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    command: String,
    parameters: BTreeMap<String, Value>,
    checks: Vec<Check>,
}

impl ReportBuilder {
    pub fn new(command: impl Into<String>) -> Self {
        ReportBuilder {
            command: command.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.into(), value.into());
        self
    }

    pub fn pass(&mut self, name: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Pass,
            witness: None,
        });
        self
    }

    pub fn pass_with(&mut self, name: impl Into<String>, witness: impl Into<Value>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Pass,
            witness: Some(witness.into()),
        });
        self
    }

    /// Failing checks must explain themselves: the witness is mandatory.
    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<Value>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Fail,
            witness: Some(witness.into()),
        });
        self
    }

    pub fn skip(&mut self, name: impl Into<String>) -> &mut Self {
        self.checks.push(Check {
            name: name.into(),
            status: CheckStatus::Skip,
            witness: None,
        });
        self
    }

    /// Records a pass/fail verdict in one call.
    pub fn verdict(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        witness: impl Into<Value>,
    ) -> &mut Self {
        if passed {
            self.pass(name)
        } else {
            self.fail(name, witness)
        }
    }

    pub fn append_checks(&mut self, checks: Vec<Check>) -> &mut Self {
        self.checks.extend(checks);
        self
    }

    pub fn build(self) -> VerificationReport {
        let mut checks = self.checks;
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let summary = Summary {
            pass: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Pass)
                .count(),
            fail: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Fail)
                .count(),
            skip: checks
                .iter()
                .filter(|c| c.status == CheckStatus::Skip)
                .count(),
        };
        VerificationReport {
            schema: SCHEMA.to_string(),
            command: self.command,
            parameters: self.parameters,
            checks,
            summary,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_partitions_checks() {
        let mut b = ReportBuilder::new("demo");
        b.pass("a").fail("b", "boom").skip("c").pass_with("d", 7);
        let report = b.build();
        assert_eq!(
            report.summary,
            Summary {
                pass: 2,
                fail: 1,
                skip: 1
            }
        );
        assert_eq!(
            report.summary.pass + report.summary.fail + report.summary.skip,
            4
        );
        assert!(!report.all_passed());
    }

    #[test]
    fn checks_sorted_and_fail_has_witness() {
        let mut b = ReportBuilder::new("demo");
        b.fail("z", "why").pass("a");
        let report = b.build();
        assert_eq!(report.checks[0].name, "a");
        assert_eq!(report.checks[1].name, "z");
        for check in &report.checks {
            if check.status == CheckStatus::Fail {
                assert!(check.witness.is_some());
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let mut b = ReportBuilder::new("demo");
        b.parameter("n", 3)
            .parameter("d", 2)
            .pass_with("values", serde_json::json!({"g": 4}));
        let report = b.build();
        let text = report.to_json();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }
}
