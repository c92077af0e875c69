//! Games of centrality-maximizing agents at vanishing edge cost.
//!
//! Utilities are `C_i(g) − c·deg(i)` with `c → 0⁺`, which compiles to sign
//! tests: an addition blocks stability iff both endpoints strictly gain, a
//! removal blocks iff some endpoint does not lose.

mod dynamics;
mod moves;
mod profile;
mod stability;

pub use dynamics::{best_response_dynamics, DynamicsRule, Trajectory};
pub use moves::{delta_add, delta_remove, evaluate_flip, improving_add, improving_remove, FlipKind, FlipRecord};
pub use profile::{parse_profile, ProfileEntry, ProfileError};
pub use stability::{apsn_verdict, epsilon_witness, finite_cost_check, is_apsn, StabilityReport, Verdict};

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::centrality::{CentralityError, Measure};
use crate::graph::GraphError;
use crate::value::{ExtRational, ValueError, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("game has {agents} agents but the graph has {n} vertices")]
    AgentCount { agents: usize, n: usize },
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Value(#[from] ValueError),
    #[error("game mixes exact and floating-point measures")]
    MixedArithmetic,
    #[error("floating-point measure {0} requires the tolerant policy")]
    ApproxUnderExact(String),
    #[error("threshold for agent {agent} is negative")]
    NegativeThreshold { agent: usize },
    #[error("homophily function is not strictly increasing at {at}")]
    HomophilyNotIncreasing { at: usize },
    #[error("homophily table has no value for degree {degree}")]
    HomophilyDomain { degree: usize },
    #[error("agent {agent} follows a rule, so it has no numeric centrality")]
    RuleAgent { agent: usize },
    #[error("pair {i} {j} is {state}")]
    Pair { i: usize, j: usize, state: &'static str },
    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("this operation requires the exact numeric policy")]
    NeedsExact,
}

impl GameError {
    pub fn code(&self) -> &'static str {
        match self {
            GameError::AgentCount { .. } => "agent_count",
            GameError::Centrality(e) => e.code(),
            GameError::Graph(GraphError::TooManyVertices { .. }) => "size_guard",
            GameError::Graph(_) => "invalid_graph",
            GameError::Value(_) => "arithmetic",
            GameError::MixedArithmetic | GameError::ApproxUnderExact(_) | GameError::NeedsExact => "numeric_policy",
            GameError::NegativeThreshold { .. } => "threshold",
            GameError::HomophilyNotIncreasing { .. } | GameError::HomophilyDomain { .. } => "homophily_function",
            GameError::RuleAgent { .. } => "rule_agent",
            GameError::Pair { .. } => "invalid_pair",
            GameError::Tolerance(_) => "numeric_policy",
        }
    }
}

/// Abstract agent types defined by how additions move their centrality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MonotoneType {
    /// Every addition strictly helps.
    #[serde(rename = "1")]
    One,
    /// Every addition strictly hurts.
    #[serde(rename = "1p")]
    OnePrime,
    /// Additions help inside a component and never help across components.
    #[serde(rename = "2")]
    Two,
    /// Additions help across components and never help inside one.
    #[serde(rename = "2p")]
    TwoPrime,
}

impl MonotoneType {
    pub const ALL: [MonotoneType; 4] = [MonotoneType::One, MonotoneType::OnePrime, MonotoneType::Two, MonotoneType::TwoPrime];

    pub fn code(self) -> &'static str {
        match self {
            MonotoneType::One => "1",
            MonotoneType::OnePrime => "1p",
            MonotoneType::Two => "2",
            MonotoneType::TwoPrime => "2p",
        }
    }

    pub fn from_code(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.code() == s)
    }
}

impl fmt::Display for MonotoneType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// The strictly increasing `f` of a degree-homophilic agent: `i` accepts `j`
/// iff `deg(j) ≤ f(deg(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Homophily {
    /// `f(d) = (d+1)(d+2) − 3`, so `f(0) = −1`.
    GameTheoretic,
    /// `f(d)` listed for `d = 0, 1, ...`.
    Table(Vec<i64>),
}

impl Homophily {
    pub fn eval(&self, d: usize) -> Result<i64, GameError> {
        match self {
            Homophily::GameTheoretic => {
                let d = d as i64;
                Ok((d + 1) * (d + 2) - 3)
            }
            Homophily::Table(t) => t.get(d).copied().ok_or(GameError::HomophilyDomain { degree: d }),
        }
    }

    pub fn validate(&self) -> Result<(), GameError> {
        if let Homophily::Table(t) = self {
            if let Some(at) = t.windows(2).position(|w| w[0] >= w[1]) {
                return Err(GameError::HomophilyNotIncreasing { at: at + 1 });
            }
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        match self {
            Homophily::GameTheoretic => "gt".into(),
            Homophily::Table(t) => format!("{t:?}"),
        }
    }
}

/// Behavior of one vertex.
#[derive(Clone, Debug, PartialEq)]
pub enum AgentProfile {
    /// Maximizes `min(C, θ)`; no threshold means untruncated.
    Numeric { measure: Measure, threshold: Option<ExtRational> },
    Monotone(MonotoneType),
    Homophilic(Homophily),
}

impl AgentProfile {
    pub fn numeric(measure: Measure) -> Self {
        AgentProfile::Numeric { measure, threshold: None }
    }

    pub fn truncated(measure: Measure, threshold: ExtRational) -> Self {
        AgentProfile::Numeric { measure, threshold: Some(threshold) }
    }

    pub fn measure(&self) -> Option<&Measure> {
        match self {
            AgentProfile::Numeric { measure, .. } => Some(measure),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            AgentProfile::Numeric { measure, threshold: None } => format!("measure={}", describe_measure(measure)),
            AgentProfile::Numeric { measure, threshold: Some(t) } => {
                format!("measure={};threshold={t}", describe_measure(measure))
            }
            AgentProfile::Monotone(t) => format!("rule={t}"),
            AgentProfile::Homophilic(h) => format!("homophily_f={}", h.describe()),
        }
    }
}

fn describe_measure(m: &Measure) -> String {
    match m {
        Measure::Linear(w) => format!("linear[{}]", w.to_text().trim().replace('\n', ";")),
        Measure::Katz(None) => "katz:default".into(),
        m => m.to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum NumericPolicy {
    Exact,
    /// `|Δ| ≤ τ` counts as zero; `τ < |Δ| < 1000τ` is reported as ambiguous.
    Tolerant { tau: f64 },
}

impl NumericPolicy {
    pub fn tolerant() -> Self {
        NumericPolicy::Tolerant { tau: DEFAULT_TOLERANCE }
    }
}

/// Agents, one per vertex, and the numeric comparison policy.
#[derive(Clone, Debug, PartialEq)]
pub struct GameSpec {
    agents: Vec<AgentProfile>,
    policy: NumericPolicy,
}

impl GameSpec {
    pub fn new(agents: Vec<AgentProfile>, policy: NumericPolicy) -> Result<Self, GameError> {
        if let NumericPolicy::Tolerant { tau } = policy {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(GameError::Tolerance(tau));
            }
        }
        let mut exact = false;
        let mut approx = None;
        for (k, a) in agents.iter().enumerate() {
            match a {
                AgentProfile::Numeric { measure, threshold } => {
                    if measure.is_exact() {
                        exact = true;
                    } else {
                        approx = Some(measure.to_string());
                    }
                    if let Some(t) = threshold {
                        if t.signum() == std::cmp::Ordering::Less {
                            return Err(GameError::NegativeThreshold { agent: k });
                        }
                    }
                }
                AgentProfile::Homophilic(h) => h.validate()?,
                AgentProfile::Monotone(_) => {}
            }
        }
        if exact && approx.is_some() {
            return Err(GameError::MixedArithmetic);
        }
        if let (Some(m), NumericPolicy::Exact) = (approx, policy) {
            return Err(GameError::ApproxUnderExact(m));
        }
        Ok(Self { agents, policy })
    }

    /// Every agent uses `measure`; the policy follows the measure's arithmetic.
    pub fn uniform(measure: Measure, n: usize) -> Result<Self, GameError> {
        let policy = if measure.is_exact() { NumericPolicy::Exact } else { NumericPolicy::tolerant() };
        Self::new(vec![AgentProfile::numeric(measure); n], policy)
    }

    pub fn uniform_truncated(measure: Measure, thresholds: &[ExtRational]) -> Result<Self, GameError> {
        let policy = if measure.is_exact() { NumericPolicy::Exact } else { NumericPolicy::tolerant() };
        let agents = thresholds.iter().map(|t| AgentProfile::truncated(measure.clone(), t.clone())).collect();
        Self::new(agents, policy)
    }

    pub fn monotone(types: &[MonotoneType]) -> Self {
        Self::new(types.iter().map(|&t| AgentProfile::Monotone(t)).collect(), NumericPolicy::Exact)
            .expect("rule agents are always valid")
    }

    pub fn homophilic(f: Homophily, n: usize) -> Result<Self, GameError> {
        Self::new(vec![AgentProfile::Homophilic(f); n], NumericPolicy::Exact)
    }

    pub fn agents(&self) -> &[AgentProfile] {
        &self.agents
    }

    pub fn agent(&self, k: usize) -> &AgentProfile {
        &self.agents[k]
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn policy(&self) -> NumericPolicy {
        self.policy
    }

    pub fn is_exact(&self) -> bool {
        self.policy == NumericPolicy::Exact
    }

    pub fn check_size(&self, n: usize) -> Result<(), GameError> {
        if self.agents.len() != n {
            return Err(GameError::AgentCount { agents: self.agents.len(), n });
        }
        Ok(())
    }

    /// Stable text rendering of the whole game, used for fingerprints.
    pub fn describe(&self) -> String {
        let policy = match self.policy {
            NumericPolicy::Exact => "exact".to_string(),
            NumericPolicy::Tolerant { tau } => format!("tolerant:{tau:e}"),
        };
        let agents: Vec<String> = self.agents.iter().map(AgentProfile::describe).collect();
        format!("policy={policy}\n{}", agents.join("\n"))
    }

    /// SHA-256 of [`GameSpec::describe`], hex encoded.
    pub fn fingerprint(&self) -> String {
        hex::encode(Sha256::digest(self.describe().as_bytes()))
    }

    /// The game with every agent's threshold replaced by `thresholds`.
    pub fn with_thresholds(&self, thresholds: &[ExtRational]) -> Result<Self, GameError> {
        let agents = self
            .agents
            .iter()
            .zip(thresholds)
            .enumerate()
            .map(|(agent, (a, t))| match a {
                AgentProfile::Numeric { measure, .. } => {
                    Ok(AgentProfile::Numeric { measure: measure.clone(), threshold: Some(t.clone()) })
                }
                _ => Err(GameError::RuleAgent { agent }),
            })
            .collect::<Result<_, _>>()?;
        Self::new(agents, self.policy)
    }
}
