use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::enumeration::DivisorEnumeration;

/// Full inputs of one examined case, enough to replay it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CaseInputs {
    pub divisor: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub inputs: CaseInputs,
    /// Named observed quantities, e.g. `r(D)`, `r(K-D)`.
    pub observed: BTreeMap<String, i64>,
    /// The relation that should have held.
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub genus: i64,
    pub point_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<DivisorEnumeration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
}

/// Outcome of one checking campaign against one backend.
///
/// `passed` includes vacuous cases, so `passed + counterexamples.len() == examined`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub backend: String,
    pub params: ReportParams,
    pub examined: u64,
    pub vacuous: u64,
    pub passed: u64,
    pub counterexamples: Vec<Counterexample>,
    pub seed: Option<u64>,
    pub wall_ms: u64,
    /// Integer side statistics (e.g. how many points witness a case).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub stats: BTreeMap<String, u64>,
    /// Set when a theorem-violation aborted the campaign.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aborted: Option<String>,
}

impl CheckReport {
    pub fn tested(&self) -> u64 {
        self.examined - self.vacuous
    }

    pub fn is_pass(&self) -> bool {
        self.counterexamples.is_empty() && self.aborted.is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// JSON with the wall-time field zeroed, for reproducibility comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut copy = self.clone();
        copy.wall_ms = 0;
        copy.to_json()
    }

    pub(crate) fn sort_counterexamples(&mut self) {
        self.counterexamples.sort_by(|a, b| a.inputs.cmp(&b.inputs));
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_pass() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {:<10} {:<40} examined={:<7} tested={:<7} vacuous={:<7} failures={}",
            self.check,
            self.backend,
            self.examined,
            self.tested(),
            self.vacuous,
            self.counterexamples.len()
        )?;
        if let Some(why) = &self.aborted {
            write!(f, " aborted: {why}")?;
        }
        Ok(())
    }
}
