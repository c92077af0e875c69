//! Learning a hidden threshold from an oracle that only ever answers with
//! stable networks.

use serde::Serialize;
use thiserror::Error;

use crate::census::{labeled_apsn, CensusError};
use crate::centrality::{centrality, CentralityError, Measure};
use crate::game::{AgentProfile, GameSpec};
use crate::graph::{canonical_form, write_graph6, Graph, GraphError};
use crate::value::{ExtRational, Value};

/// Largest `n` for which the oracle precomputes the stable set.
pub const MAX_ORACLE_VERTICES: usize = 6;

const RESOLUTION_CAVEAT: &str = "thresholds are identifiable only up to the returned interval: values between \
consecutive attainable centralities are indistinguishable, and only stable networks are ever observed";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LearningError {
    #[error("oracle precomputation is limited to {max} vertices, got {n}")]
    Size { n: usize, max: usize },
    #[error("agent {agent} must be a numeric agent")]
    NotNumeric { agent: usize },
    #[error("agent {agent} out of range for {n} vertices")]
    Agent { agent: usize, n: usize },
    #[error("oracle measures must be exact; agent {agent} uses {measure}")]
    Inexact { agent: usize, measure: String },
    #[error("{0}")]
    Census(String),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl LearningError {
    pub fn code(&self) -> &'static str {
        match self {
            LearningError::Size { .. } => "size_guard",
            LearningError::NotNumeric { .. } | LearningError::Agent { .. } => "invalid_parameter",
            LearningError::Inexact { .. } => "needs_exact",
            LearningError::Census(_) => "census",
            LearningError::Centrality(e) => e.code(),
            LearningError::Graph(_) => "invalid_graph",
        }
    }
}

impl From<CensusError> for LearningError {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::Size { n, max, .. } => LearningError::Size { n, max },
            other => LearningError::Census(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "answer", content = "graph", rename_all = "lowercase")]
pub enum OracleAnswer {
    Graph(Graph),
    None,
}

/// A hidden truncated game together with all of its stable networks.
#[derive(Clone, Debug)]
pub struct HiddenGame {
    spec: GameSpec,
    apsn: Vec<Graph>,
}

impl HiddenGame {
    pub fn new(spec: GameSpec) -> Result<Self, LearningError> {
        let n = spec.len();
        if n > MAX_ORACLE_VERTICES {
            return Err(LearningError::Size { n, max: MAX_ORACLE_VERTICES });
        }
        for (agent, a) in spec.agents().iter().enumerate() {
            match a.measure() {
                None => return Err(LearningError::NotNumeric { agent }),
                Some(m) if !m.is_exact() => {
                    return Err(LearningError::Inexact { agent, measure: m.to_string() });
                }
                Some(_) => {}
            }
        }
        let apsn = labeled_apsn(&spec, n)?;
        Ok(Self { spec, apsn })
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    /// Every stable labeled network, in mask order.
    pub fn apsn(&self) -> &[Graph] {
        &self.apsn
    }

    fn measure(&self, i: usize) -> Result<&Measure, LearningError> {
        if i >= self.spec.len() {
            return Err(LearningError::Agent { agent: i, n: self.spec.len() });
        }
        self.spec.agent(i).measure().ok_or(LearningError::NotNumeric { agent: i })
    }

    fn threshold(&self, i: usize) -> ExtRational {
        match self.spec.agent(i) {
            AgentProfile::Numeric { threshold: Some(t), .. } => t.clone(),
            _ => ExtRational::PosInf,
        }
    }

    fn value(&self, i: usize, g: &Graph) -> Result<ExtRational, LearningError> {
        let v = centrality(self.measure(i)?, g, i)?;
        Ok(v.exact().expect("exact measures only").clone())
    }

    /// A stable `h` with `C_i[h] > C_i[g]`, maximizing `C_i[h]` and then
    /// preferring the smallest canonical form and mask; `None` if there is none.
    pub fn oracle(&self, i: usize, g: &Graph) -> Result<OracleAnswer, LearningError> {
        let current = self.value(i, g)?;
        let mut best: Option<(ExtRational, u128, u128, Graph)> = None;
        for h in &self.apsn {
            let c = self.value(i, h)?;
            if c <= current {
                continue;
            }
            let form = canonical_form(h)?.mask;
            let better = match &best {
                None => true,
                Some((bc, bf, bm, _)) => c > *bc || (c == *bc && (form, h.pair_mask()) < (*bf, *bm)),
            };
            if better {
                best = Some((c, form, h.pair_mask(), *h));
            }
        }
        Ok(best.map_or(OracleAnswer::None, |(_, _, _, h)| OracleAnswer::Graph(h)))
    }

    /// Some stable network gives `i` at least its threshold.
    pub fn hypothesis_holds(&self, i: usize) -> Result<bool, LearningError> {
        let theta = self.threshold(i);
        for h in &self.apsn {
            if self.value(i, h)? >= theta {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Query {
    pub graph6: String,
    pub answer: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdInterval {
    pub apsn: Graph,
    /// An edge of `apsn` at the agent, absent when the agent is isolated.
    pub edge: Option<(usize, usize)>,
    pub low: Value,
    pub high: Value,
}

impl ThresholdInterval {
    pub fn contains(&self, theta: &ExtRational) -> bool {
        match (self.low.exact(), self.high.exact()) {
            (Some(lo), Some(hi)) => lo <= theta && theta <= hi,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LearnReport {
    pub agent: usize,
    pub interval: ThresholdInterval,
    pub no_adjacent_edge: bool,
    pub transcript: Vec<Query>,
    pub queries: usize,
    /// False when no stable network reaches the hidden threshold, in which
    /// case the interval may miss it.
    pub hypothesis_verified: bool,
    pub caveat: &'static str,
}

/// Starts from the empty graph and follows oracle answers until `NONE`, then
/// brackets `θ_i` with the last answer and its smallest-index edge at `i`.
pub fn learn_threshold(game: &HiddenGame, i: usize) -> Result<LearnReport, LearningError> {
    game.measure(i)?;
    let mut g = Graph::empty(game.spec.len())?;
    let mut transcript = Vec::new();
    loop {
        let answer = game.oracle(i, &g)?;
        transcript.push(Query {
            graph6: write_graph6(&g),
            answer: match &answer {
                OracleAnswer::Graph(h) => Some(write_graph6(h)),
                OracleAnswer::None => None,
            },
        });
        match answer {
            OracleAnswer::Graph(h) => g = h,
            OracleAnswer::None => break,
        }
    }
    let high = Value::Exact(game.value(i, &g)?);
    let edge = g.neighbor_iter(i).next().map(|j| (i, j));
    let low = match edge {
        Some((_, j)) => Value::Exact(game.value(i, &g.without_edge(i, j))?),
        None => high.clone(),
    };
    Ok(LearnReport {
        agent: i,
        interval: ThresholdInterval { apsn: g, edge, low, high },
        no_adjacent_edge: edge.is_none(),
        queries: transcript.len(),
        transcript,
        hypothesis_verified: game.hypothesis_holds(i)?,
        caveat: RESOLUTION_CAVEAT,
    })
}
