use std::path::{Path, PathBuf};

use quotkit_core::transform::{GraphSpec, Strategy};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("scenario does not parse: {0}")]
    Parse(String),
    #[error("invalid field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
}

fn d_one() -> usize {
    1
}
fn d_five() -> usize {
    5
}
fn twenty() -> usize {
    20
}
fn fifty() -> usize {
    50
}
fn four() -> usize {
    4
}
fn ten() -> usize {
    10
}
fn two_hundred() -> usize {
    200
}
fn default_range() -> Vec<usize> {
    vec![1, 2, 3]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaParams {
    #[serde(default = "d_one")]
    pub d_min: usize,
    #[serde(default = "d_five")]
    pub d_max: usize,
    #[serde(default = "twenty")]
    pub samples: usize,
    #[serde(default = "fifty")]
    pub limit_samples: usize,
    #[serde(default = "four")]
    pub limit_d_max: usize,
}

impl Default for GammaParams {
    fn default() -> Self {
        Self {
            d_min: 1,
            d_max: 5,
            samples: 20,
            limit_samples: 50,
            limit_d_max: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartParams {
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionParams {
    #[serde(default = "d_five")]
    pub d_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    #[serde(rename = "2C", alias = "2c")]
    TwoC,
    #[serde(rename = "picard-1")]
    PicardOne,
}

/// Where a transform scenario gets its graph: a named preset, a JSON file,
/// an inline graph, or a batch of random consistent graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphParams {
    #[serde(default, skip_serializing_if = "Option::is_none", alias = "preset")]
    pub scenario: Option<Preset>,
    /// `C² = −d` for the 2C preset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    /// `C² > 0` for the Picard-1 preset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csq: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inline: Option<GraphSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChernParams {
    #[serde(default = "ten")]
    pub d_max: usize,
    #[serde(default = "two_hundred")]
    pub chains: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IneqParams {
    #[serde(default = "d_five")]
    pub m_max: usize,
    #[serde(default = "d_five")]
    pub r_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteParams {
    #[serde(default = "default_range")]
    pub d_range: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Scenario {
    Gamma(GammaParams),
    Chart(ChartParams),
    Transition(TransitionParams),
    Forward(GraphParams),
    Backward(GraphParams),
    ChoiceDim(GraphParams),
    Chern(ChernParams),
    Ineq(IneqParams),
    Suite(SuiteParams),
}

/// A scenario document: the scenario itself plus optional run settings that
/// override command-line flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScenarioFile {
    #[serde(flatten)]
    pub scenario: Scenario,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let parse_err = |e: serde_json::Error| ScenarioError::Parse(e.to_string());
        let mut doc: serde_json::Value = serde_json::from_str(text).map_err(parse_err)?;
        let obj = doc
            .as_object_mut()
            .ok_or_else(|| ScenarioError::Parse("expected a JSON object".into()))?;
        let seed = obj.remove("seed").map(serde_json::from_value).transpose().map_err(parse_err)?;
        let strategy = obj
            .remove("strategy")
            .map(serde_json::from_value)
            .transpose()
            .map_err(parse_err)?;
        let scenario: Scenario = serde_json::from_value(doc).map_err(parse_err)?;
        scenario.validate()?;
        Ok(Self {
            scenario,
            seed,
            strategy,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}

fn invalid(field: &'static str, reason: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid {
        field,
        reason: reason.into(),
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<(), ScenarioError> {
        match self {
            Scenario::Gamma(p) => {
                if p.d_min > p.d_max {
                    return Err(invalid("d_min", "exceeds d_max"));
                }
            }
            Scenario::Chart(p) => {
                if p.d == 0 {
                    return Err(invalid("d", "must be at least 1"));
                }
            }
            Scenario::Transition(p) => {
                if p.d_max == 0 {
                    return Err(invalid("d_max", "must be at least 1"));
                }
            }
            Scenario::Forward(g) | Scenario::Backward(g) | Scenario::ChoiceDim(g) => {
                let sources = [g.scenario.is_some(), g.graph.is_some(), g.inline.is_some(), g.random.is_some()]
                    .iter()
                    .filter(|&&b| b)
                    .count();
                if sources != 1 {
                    return Err(invalid(
                        "scenario",
                        "give exactly one of scenario, graph, inline, random",
                    ));
                }
                match g.scenario {
                    Some(Preset::TwoC) if g.d.map_or(true, |d| d < 1) => {
                        return Err(invalid("d", "the 2C preset needs d ≥ 1"));
                    }
                    Some(Preset::PicardOne) if g.csq.map_or(true, |c| c < 1) => {
                        return Err(invalid("csq", "the Picard-1 preset needs csq ≥ 1"));
                    }
                    _ => {}
                }
            }
            Scenario::Chern(_) => {}
            Scenario::Ineq(p) => {
                if p.m_max == 0 || p.r_max == 0 {
                    return Err(invalid("m_max", "grid bounds must be positive"));
                }
            }
            Scenario::Suite(p) => {
                if p.d_range.is_empty() {
                    return Err(invalid("d_range", "must not be empty"));
                }
                if p.d_range.contains(&0) {
                    return Err(invalid("d_range", "every d must be at least 1"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_scenario_documents() {
        let f = ScenarioFile::parse(r#"{"kind": "choice-dim", "scenario": "2C", "d": 3}"#).unwrap();
        assert_eq!(
            f.scenario,
            Scenario::ChoiceDim(GraphParams {
                scenario: Some(Preset::TwoC),
                d: Some(3),
                ..Default::default()
            })
        );
        let f = ScenarioFile::parse(r#"{"kind": "ineq", "m_max": 5, "r_max": 5, "seed": 9}"#).unwrap();
        assert_eq!(f.seed, Some(9));
        let f = ScenarioFile::parse(r#"{"kind": "chart", "d": 1}"#).unwrap();
        assert_eq!(f.scenario, Scenario::Chart(ChartParams { d: 1 }));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            ScenarioFile::parse(r#"{"kind": "suite", "d_range": []}"#),
            Err(ScenarioError::Invalid { field: "d_range", .. })
        ));
        assert!(matches!(ScenarioFile::parse(r#"{"kind": "nope"}"#), Err(ScenarioError::Parse(_))));
        assert!(matches!(
            ScenarioFile::parse(r#"{"kind": "chart", "d": 1, "extra": 2}"#),
            Err(ScenarioError::Parse(_))
        ));
        assert!(matches!(
            ScenarioFile::parse(r#"{"kind": "forward"}"#),
            Err(ScenarioError::Invalid { .. })
        ));
    }
}
