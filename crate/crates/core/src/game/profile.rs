//! JSON agent profiles.
//!
//! A profile is an array of entries, or an object `{"agents": [...],
//! "policy": "exact" | "tolerant", "tolerance": τ}`. Each entry has an optional
//! `"node"` and exactly one of `"measure"`, `"rule"` or `"homophily_f"`; a
//! numeric entry may add a `"threshold"`. An entry without `"node"` applies to
//! every vertex not listed explicitly.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use super::{AgentProfile, GameError, GameSpec, Homophily, MonotoneType, NumericPolicy};
use crate::centrality::{CentralityError, Measure};
use crate::value::{ExtRational, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("profile is not valid JSON: {0}")]
    Json(String),
    #[error("profile entry {index}: {reason}")]
    Entry { index: usize, reason: String },
    #[error("no profile entry covers vertex {0} and there is no default entry")]
    MissingNode(usize),
    #[error("vertex {0} is listed more than once")]
    DuplicateNode(usize),
    #[error("more than one default entry")]
    DuplicateDefault,
    #[error("profile entry for vertex {node} but the graph has {n} vertices")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("profile entry {index}: {source}")]
    Measure { index: usize, source: CentralityError },
    #[error(transparent)]
    Game(#[from] GameError),
}

impl ProfileError {
    pub fn code(&self) -> &'static str {
        match self {
            ProfileError::Measure { source, .. } => source.code(),
            ProfileError::Game(e) => e.code(),
            _ => "malformed_profile",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum HomophilySpec {
    Name(String),
    Table(Vec<i64>),
    Object { table: Vec<i64> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileEntry {
    pub node: Option<usize>,
    pub measure: Option<String>,
    pub threshold: Option<String>,
    pub rule: Option<String>,
    homophily_f: Option<HomophilySpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Document {
    List(Vec<ProfileEntry>),
    Object {
        agents: Vec<ProfileEntry>,
        policy: Option<String>,
        tolerance: Option<f64>,
    },
}

impl ProfileEntry {
    fn to_agent(&self, index: usize, base: Option<&Path>) -> Result<AgentProfile, ProfileError> {
        let bad = |reason: String| ProfileError::Entry { index, reason };
        let kinds = [self.measure.is_some(), self.rule.is_some(), self.homophily_f.is_some()];
        if kinds.iter().filter(|&&k| k).count() != 1 {
            return Err(bad("exactly one of measure, rule, homophily_f is required".into()));
        }
        if self.threshold.is_some() && self.measure.is_none() {
            return Err(bad("threshold applies only to measure entries".into()));
        }
        if let Some(m) = &self.measure {
            let measure = Measure::parse(m, base).map_err(|source| ProfileError::Measure { index, source })?;
            let threshold = match &self.threshold {
                None => None,
                Some(t) => Some(t.parse::<ExtRational>().map_err(|_| bad(format!("bad threshold {t:?}")))?),
            };
            return Ok(AgentProfile::Numeric { measure, threshold });
        }
        if let Some(r) = &self.rule {
            return MonotoneType::from_code(r)
                .map(AgentProfile::Monotone)
                .ok_or_else(|| bad(format!("rule must be one of 1, 1p, 2, 2p, got {r:?}")));
        }
        let f = match self.homophily_f.as_ref().unwrap() {
            HomophilySpec::Name(s) if s == "gt" => Homophily::GameTheoretic,
            HomophilySpec::Name(s) => return Err(bad(format!("unknown homophily function {s:?}"))),
            HomophilySpec::Table(t) | HomophilySpec::Object { table: t } => Homophily::Table(t.clone()),
        };
        Ok(AgentProfile::Homophilic(f))
    }
}

/// Builds the game for a graph on `n` vertices. Relative weight-file paths in
/// `linear:` measures resolve against `base`.
pub fn parse_profile(text: &str, n: usize, base: Option<&Path>) -> Result<GameSpec, ProfileError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| ProfileError::Json(e.to_string()))?;
    let (entries, policy_name, tolerance) = match doc {
        Document::List(e) => (e, None, None),
        Document::Object { agents, policy, tolerance } => (agents, policy, tolerance),
    };
    let mut default = None;
    let mut agents: Vec<Option<AgentProfile>> = vec![None; n];
    for (index, e) in entries.iter().enumerate() {
        let agent = e.to_agent(index, base)?;
        match e.node {
            None if default.is_some() => return Err(ProfileError::DuplicateDefault),
            None => default = Some(agent),
            Some(node) if node >= n => return Err(ProfileError::NodeOutOfRange { node, n }),
            Some(node) if agents[node].is_some() => return Err(ProfileError::DuplicateNode(node)),
            Some(node) => agents[node] = Some(agent),
        }
    }
    let agents: Vec<AgentProfile> = agents
        .into_iter()
        .enumerate()
        .map(|(k, a)| a.or_else(|| default.clone()).ok_or(ProfileError::MissingNode(k)))
        .collect::<Result<_, _>>()?;
    let any_approx = agents.iter().any(|a| a.measure().is_some_and(|m| !m.is_exact()));
    let policy = match policy_name.as_deref() {
        Some("exact") => NumericPolicy::Exact,
        Some("tolerant") => NumericPolicy::Tolerant { tau: tolerance.unwrap_or(DEFAULT_TOLERANCE) },
        Some(other) => {
            return Err(ProfileError::Entry { index: 0, reason: format!("unknown policy {other:?}") })
        }
        None if any_approx || tolerance.is_some() => {
            NumericPolicy::Tolerant { tau: tolerance.unwrap_or(DEFAULT_TOLERANCE) }
        }
        None => NumericPolicy::Exact,
    };
    Ok(GameSpec::new(agents, policy)?)
}
