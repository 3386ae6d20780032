use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    /// The statement this check certifies, in the tool's own words.
    pub anchor: String,
    pub verdict: Verdict,
    pub witness: Value,
}

impl Check {
    pub fn new(label: impl Into<String>, anchor: impl Into<String>, verdict: Verdict, witness: Value) -> Self {
        Self {
            label: label.into(),
            anchor: anchor.into(),
            verdict,
            witness,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub scenario: Scenario,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenario: Scenario, seed: u64, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.label.cmp(&b.label));
        let mut summary = Summary::default();
        for c in &checks {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Inconclusive => summary.inconclusive += 1,
            }
        }
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            scenario,
            checks,
            summary,
        }
    }

    /// 0 when everything passed, 1 on any failure, 3 when the only
    /// non-passing checks are inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.inconclusive > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} (seed {})", self.tool, self.version, self.seed);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", c.verdict.tag(), c.label, c.anchor);
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} inconclusive",
            self.summary.pass, self.summary.fail, self.summary.inconclusive
        );
        out
    }
}
