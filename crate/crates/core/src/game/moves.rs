//! Edge flips and their improving-move tests.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{AgentProfile, GameError, GameSpec, MonotoneType, NumericPolicy};
use crate::centrality::{centralities, centrality, Measure};
use crate::graph::Graph;
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipKind {
    Add,
    Remove,
}

/// Outcome of flipping one pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlipRecord {
    pub i: usize,
    pub j: usize,
    pub kind: FlipKind,
    /// `C_k(after) − C_k(before)` for numeric endpoints, truncation applied.
    pub deltas: [Option<Value>; 2],
    /// Whether each endpoint supports the flip: strictly gains on an
    /// addition, does not lose on a removal.
    pub willing: [bool; 2],
    /// The flip is an improving move, so the graph is not stable.
    pub blocking: bool,
    /// False when a delta inside the tolerance band could change `blocking`.
    pub robust: bool,
}

impl FlipRecord {
    pub fn is_ambiguous(&self) -> bool {
        !self.robust
    }
}

/// Support of one endpoint: the nominal answer, plus the other answer when a
/// near-zero float delta leaves it uncertain.
#[derive(Clone, Copy, Debug)]
struct Support {
    nominal: bool,
    uncertain: bool,
}

impl Support {
    fn sure(nominal: bool) -> Self {
        Self { nominal, uncertain: false }
    }

    fn options(self) -> &'static [bool] {
        match (self.uncertain, self.nominal) {
            (true, _) => &[true, false],
            (false, true) => &[true],
            (false, false) => &[false],
        }
    }
}

fn is_global(m: &Measure) -> bool {
    matches!(m, Measure::Betweenness | Measure::Eigenvector | Measure::Katz(_) | Measure::PageRank(_))
}

/// Truncated centralities of the listed numeric agents on `h`.
pub(crate) fn agent_values(spec: &GameSpec, h: &Graph, verts: &[usize]) -> Result<Vec<Value>, GameError> {
    let mut cache: Vec<(&Measure, Vec<Value>)> = Vec::new();
    let mut out = Vec::with_capacity(verts.len());
    for &k in verts {
        let AgentProfile::Numeric { measure, threshold } = spec.agent(k) else {
            return Err(GameError::RuleAgent { agent: k });
        };
        let raw = if is_global(measure) {
            let pos = match cache.iter().position(|(m, _)| *m == measure) {
                Some(p) => p,
                None => {
                    cache.push((measure, centralities(measure, h)?));
                    cache.len() - 1
                }
            };
            cache[pos].1[k].clone()
        } else {
            centrality(measure, h, k)?
        };
        out.push(match threshold {
            Some(t) => raw.truncate(t),
            None => raw,
        });
    }
    Ok(out)
}

/// Sign of a delta and whether it is outside the tolerance band.
pub(crate) fn classify(delta: &Value, policy: NumericPolicy) -> (Ordering, bool) {
    match delta {
        Value::Exact(x) => (x.signum(), true),
        Value::Approx { value, tol } => {
            let tau = match policy {
                NumericPolicy::Tolerant { tau } => tau,
                NumericPolicy::Exact => *tol,
            };
            let mag = value.abs();
            if mag <= tau {
                (Ordering::Equal, true)
            } else {
                let sign = if *value > 0.0 { Ordering::Greater } else { Ordering::Less };
                (sign, mag >= 1000.0 * tau)
            }
        }
    }
}

/// Evaluates flips of one base graph, reusing its centralities.
pub(crate) struct FlipEvaluator<'a> {
    spec: &'a GameSpec,
    g: Graph,
    base: Vec<Option<Value>>,
}

impl<'a> FlipEvaluator<'a> {
    pub fn new(spec: &'a GameSpec, g: &Graph) -> Result<Self, GameError> {
        spec.check_size(g.n())?;
        let numeric: Vec<usize> =
            g.vertices().filter(|&k| matches!(spec.agent(k), AgentProfile::Numeric { .. })).collect();
        let values = agent_values(spec, g, &numeric)?;
        let mut base = vec![None; g.n()];
        for (k, v) in numeric.into_iter().zip(values) {
            base[k] = Some(v);
        }
        Ok(Self { spec, g: *g, base })
    }

    pub fn evaluate(&self, i: usize, j: usize) -> Result<FlipRecord, GameError> {
        check_pair(&self.g, i, j)?;
        let kind = if self.g.has_edge(i, j) { FlipKind::Remove } else { FlipKind::Add };
        let (i, j) = (i.min(j), i.max(j));
        let after = self.g.flipped(i, j);
        let numeric: Vec<usize> = [i, j].into_iter().filter(|&k| self.base[k].is_some()).collect();
        let after_vals = agent_values(self.spec, &after, &numeric)?;
        let mut deltas: [Option<Value>; 2] = [None, None];
        let mut support = [Support::sure(false); 2];
        for (slot, (k, other)) in [(i, j), (j, i)].into_iter().enumerate() {
            support[slot] = match self.spec.agent(k) {
                AgentProfile::Numeric { .. } => {
                    let pos = numeric.iter().position(|&v| v == k).unwrap();
                    let d = after_vals[pos].sub(self.base[k].as_ref().unwrap())?;
                    let (sign, sure) = classify(&d, self.spec.policy());
                    deltas[slot] = Some(d);
                    match kind {
                        FlipKind::Add => Support { nominal: sign == Ordering::Greater, uncertain: !sure },
                        FlipKind::Remove => Support { nominal: sign != Ordering::Less, uncertain: !sure },
                    }
                }
                AgentProfile::Monotone(t) => Support::sure(monotone_support(*t, &self.g, k, other, kind)),
                AgentProfile::Homophilic(f) => {
                    let (dk, dother) = (self.g.degree(k), self.g.degree(other));
                    Support::sure(match kind {
                        FlipKind::Add => dother as i64 <= f.eval(dk)?,
                        FlipKind::Remove => dother as i64 - 1 > f.eval(dk - 1)?,
                    })
                }
            };
        }
        let decide = |a: bool, b: bool| match kind {
            FlipKind::Add => a && b,
            FlipKind::Remove => a || b,
        };
        let blocking = decide(support[0].nominal, support[1].nominal);
        let robust = support[0]
            .options()
            .iter()
            .all(|&a| support[1].options().iter().all(|&b| decide(a, b) == blocking));
        Ok(FlipRecord {
            i,
            j,
            kind,
            deltas,
            willing: [support[0].nominal, support[1].nominal],
            blocking,
            robust,
        })
    }
}

/// Whether a rule agent supports flipping `k`–`other`.
fn monotone_support(t: MonotoneType, g: &Graph, k: usize, other: usize, kind: FlipKind) -> bool {
    match kind {
        FlipKind::Add => {
            let same = g.same_component(k, other);
            match t {
                MonotoneType::One => true,
                MonotoneType::OnePrime => false,
                MonotoneType::Two => same,
                MonotoneType::TwoPrime => !same,
            }
        }
        // Removal helps exactly when putting the edge back would not.
        FlipKind::Remove => {
            let bridge = g.is_bridge(k, other);
            match t {
                MonotoneType::One => false,
                MonotoneType::OnePrime => true,
                MonotoneType::Two => bridge,
                MonotoneType::TwoPrime => !bridge,
            }
        }
    }
}

pub(crate) fn check_pair(g: &Graph, i: usize, j: usize) -> Result<(), GameError> {
    g.check_vertex(i)?;
    g.check_vertex(j)?;
    if i == j {
        return Err(GameError::Pair { i, j, state: "a single vertex" });
    }
    Ok(())
}

fn numeric_deltas(spec: &GameSpec, g: &Graph, i: usize, j: usize) -> Result<(Value, Value), GameError> {
    spec.check_size(g.n())?;
    for k in [i, j] {
        if !matches!(spec.agent(k), AgentProfile::Numeric { .. }) {
            return Err(GameError::RuleAgent { agent: k });
        }
    }
    let before = agent_values(spec, g, &[i, j])?;
    let after = agent_values(spec, &g.flipped(i, j), &[i, j])?;
    Ok((after[0].sub(&before[0])?, after[1].sub(&before[1])?))
}

/// `(C_i(g+ij) − C_i(g), C_j(g+ij) − C_j(g))`.
pub fn delta_add(spec: &GameSpec, g: &Graph, i: usize, j: usize) -> Result<(Value, Value), GameError> {
    check_pair(g, i, j)?;
    if g.has_edge(i, j) {
        return Err(GameError::Pair { i, j, state: "already an edge" });
    }
    numeric_deltas(spec, g, i, j)
}

/// `(C_i(g−ij) − C_i(g), C_j(g−ij) − C_j(g))`.
pub fn delta_remove(spec: &GameSpec, g: &Graph, i: usize, j: usize) -> Result<(Value, Value), GameError> {
    check_pair(g, i, j)?;
    if !g.has_edge(i, j) {
        return Err(GameError::Pair { i, j, state: "not an edge" });
    }
    numeric_deltas(spec, g, i, j)
}

pub fn evaluate_flip(spec: &GameSpec, g: &Graph, i: usize, j: usize) -> Result<FlipRecord, GameError> {
    FlipEvaluator::new(spec, g)?.evaluate(i, j)
}

/// Adding the missing edge `ij` is an improving move for small enough cost.
pub fn improving_add(spec: &GameSpec, g: &Graph, i: usize, j: usize) -> Result<bool, GameError> {
    check_pair(g, i, j)?;
    if g.has_edge(i, j) {
        return Err(GameError::Pair { i, j, state: "already an edge" });
    }
    Ok(evaluate_flip(spec, g, i, j)?.blocking)
}

/// Removing the edge `ij` is an improving move for small enough cost.
pub fn improving_remove(spec: &GameSpec, g: &Graph, i: usize, j: usize) -> Result<bool, GameError> {
    check_pair(g, i, j)?;
    if !g.has_edge(i, j) {
        return Err(GameError::Pair { i, j, state: "not an edge" });
    }
    Ok(evaluate_flip(spec, g, i, j)?.blocking)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Homophily;
    use crate::value::ExtRational;

    #[test]
    fn degree_deltas_are_one() {
        let spec = GameSpec::uniform(Measure::Degree, 4).unwrap();
        let g = Graph::path(4).unwrap();
        assert_eq!(delta_add(&spec, &g, 0, 3).unwrap(), (Value::int(1), Value::int(1)));
        assert!(improving_add(&spec, &g, 0, 3).unwrap());
        assert!(!improving_remove(&spec, &g, 0, 1).unwrap());
    }

    #[test]
    fn closeness_cross_component_add_is_negative() {
        let spec = GameSpec::uniform(Measure::Closeness, 4).unwrap();
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (a, b) = delta_add(&spec, &g, 1, 2).unwrap();
        assert!(a.exact().unwrap().signum() == Ordering::Less);
        assert!(b.exact().unwrap().signum() == Ordering::Less);
    }

    #[test]
    fn truncated_plateau_gives_zero_delta() {
        let spec = GameSpec::uniform_truncated(Measure::Degree, &vec![ExtRational::int(2); 4]).unwrap();
        let g = Graph::path(3).unwrap().with_isolated(1).unwrap();
        // Vertex 1 already has degree 2.
        let (d1, d3) = delta_add(&spec, &g, 1, 3).unwrap();
        assert_eq!(d1, Value::zero());
        assert_eq!(d3, Value::int(1));
        assert!(!improving_add(&spec, &g, 1, 3).unwrap());
    }

    #[test]
    fn monotone_rules() {
        use MonotoneType::*;
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let ones = GameSpec::monotone(&[One; 4]);
        assert!(improving_add(&ones, &g, 0, 3).unwrap());
        assert!(!improving_remove(&ones, &g, 0, 1).unwrap());
        let twop = GameSpec::monotone(&[TwoPrime; 4]);
        assert!(!improving_add(&twop, &g, 0, 2).unwrap());
        assert!(improving_add(&twop, &g, 0, 3).unwrap());
        let onep = GameSpec::monotone(&[OnePrime; 4]);
        assert!(improving_remove(&onep, &g, 0, 1).unwrap());
        assert!(!improving_add(&onep, &g, 0, 3).unwrap());
    }

    #[test]
    fn gt_isolated_never_adds() {
        let spec = GameSpec::homophilic(Homophily::GameTheoretic, 3).unwrap();
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert!(!improving_add(&spec, &g, 0, 1).unwrap());
        let num = GameSpec::uniform(Measure::GameTheoretic, 3).unwrap();
        assert!(!improving_add(&num, &g, 0, 1).unwrap());
    }

    #[test]
    fn decay_complete_graph_edges_are_kept() {
        let spec = GameSpec::uniform(Measure::decay(1, 2).unwrap(), 4).unwrap();
        let k4 = Graph::complete(4).unwrap();
        for (i, j) in k4.edges() {
            assert!(!improving_remove(&spec, &k4, i, j).unwrap());
        }
    }

    #[test]
    fn pair_preconditions() {
        let spec = GameSpec::uniform(Measure::Degree, 3).unwrap();
        let g = Graph::path(3).unwrap();
        assert!(matches!(delta_add(&spec, &g, 0, 1), Err(GameError::Pair { .. })));
        assert!(matches!(delta_remove(&spec, &g, 0, 2), Err(GameError::Pair { .. })));
        assert!(matches!(improving_add(&spec, &g, 1, 1), Err(GameError::Pair { .. })));
        let rules = GameSpec::monotone(&[MonotoneType::One; 3]);
        assert!(matches!(delta_add(&rules, &g, 0, 2), Err(GameError::RuleAgent { .. })));
        let small = GameSpec::uniform(Measure::Degree, 2).unwrap();
        assert!(matches!(delta_add(&small, &g, 0, 2), Err(GameError::AgentCount { .. })));
    }

    #[test]
    fn tolerance_band() {
        let pol = NumericPolicy::Tolerant { tau: 1e-9 };
        assert_eq!(classify(&Value::approx(5e-10), pol), (Ordering::Equal, true));
        assert_eq!(classify(&Value::approx(5e-8), pol), (Ordering::Greater, false));
        assert_eq!(classify(&Value::approx(-5e-6), pol), (Ordering::Less, true));
    }
}
