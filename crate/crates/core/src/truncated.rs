//! Games where agent `i` values `min(C_i, θ_i)`.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::centrality::{centralities, CentralityError, Measure, WeightTable};
use crate::game::{AgentProfile, GameError, GameSpec, NumericPolicy};
use crate::graph::{enumerate_labeled_graphs, pair_from_index, write_graph6, Graph, GraphError};
use crate::value::{ExtRational, Value};

/// Largest `n` for the exhaustive computation of the bounds `M`.
pub const MAX_BOUND_SEARCH_VERTICES: usize = 6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TruncatedError {
    #[error("{0}")]
    Parameter(String),
    #[error("maximal-member precondition failed: {0}")]
    Precondition(Box<PreconditionWitness>),
    #[error("exhaustive bound search is limited to {max} vertices, got {n}; supply the bounds instead")]
    Size { n: usize, max: usize },
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl TruncatedError {
    pub fn code(&self) -> &'static str {
        match self {
            TruncatedError::Parameter(_) => "invalid_parameter",
            TruncatedError::Precondition(_) => "precondition_failed",
            TruncatedError::Size { .. } => "size_guard",
            TruncatedError::Centrality(e) => e.code(),
            TruncatedError::Game(e) => e.code(),
            TruncatedError::Graph(_) => "invalid_graph",
        }
    }
}

/// A graph and addition where `C_i[g] < θ_i` and `C_i[g+ij] ≤ M_i` disagree.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreconditionWitness {
    pub graph6: String,
    pub i: usize,
    pub j: usize,
    pub before: Value,
    pub after: Value,
    pub threshold: ExtRational,
    pub bound: ExtRational,
}

impl std::fmt::Display for PreconditionWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "in {} adding {}-{} takes C_{} from {} to {} with threshold {} and bound {}",
            self.graph6, self.i, self.j, self.i, self.before, self.after, self.threshold, self.bound
        )
    }
}

fn check_lengths(n: usize, measures: &[Measure], thresholds: &[ExtRational]) -> Result<(), TruncatedError> {
    if measures.len() != n || thresholds.len() != n {
        return Err(TruncatedError::Parameter(format!(
            "{} measures and {} thresholds for {n} vertices",
            measures.len(),
            thresholds.len()
        )));
    }
    Ok(())
}

fn require_increasing(measures: &[Measure]) -> Result<(), TruncatedError> {
    match measures.iter().position(|m| !m.is_increasing()) {
        Some(k) => Err(TruncatedError::Parameter(format!("measure {} of vertex {k} is not increasing", measures[k]))),
        None => Ok(()),
    }
}

/// `C < θ`, comparing floats for approximate values.
fn below(v: &Value, theta: &ExtRational) -> bool {
    match v {
        Value::Exact(x) => x < theta,
        Value::Approx { value, .. } => *value < theta.to_f64(),
    }
}

fn at_most(v: &Value, bound: &ExtRational) -> bool {
    match v {
        Value::Exact(x) => x <= bound,
        Value::Approx { value, .. } => *value <= bound.to_f64(),
    }
}

fn to_ext(v: &Value) -> ExtRational {
    match v {
        Value::Exact(x) => x.clone(),
        Value::Approx { value, .. } => {
            BigRational::from_float(*value).map(ExtRational::Finite).unwrap_or(ExtRational::PosInf)
        }
    }
}

/// Each vertex's own measure evaluated on `g`.
fn own_values(measures: &[Measure], g: &Graph) -> Result<Vec<Value>, TruncatedError> {
    let mut out: Vec<Option<Value>> = vec![None; g.n()];
    for (k, m) in measures.iter().enumerate() {
        if out[k].is_none() {
            let all = centralities(m, g)?;
            for (l, ml) in measures.iter().enumerate() {
                if ml == m {
                    out[l] = Some(all[l].clone());
                }
            }
        }
    }
    Ok(out.into_iter().map(|v| v.expect("every vertex evaluated")).collect())
}

/// The truncated game with per-vertex measures and thresholds.
pub fn truncated_game(measures: &[Measure], thresholds: &[ExtRational]) -> Result<GameSpec, TruncatedError> {
    check_lengths(measures.len(), measures, thresholds)?;
    let agents = measures.iter().zip(thresholds).map(|(m, t)| AgentProfile::truncated(m.clone(), t.clone())).collect();
    let policy = if measures.iter().all(Measure::is_exact) { NumericPolicy::Exact } else { NumericPolicy::tolerant() };
    Ok(GameSpec::new(agents, policy)?)
}

/// Thresholds `θ_i = C_i[g]` under which `g` itself is stable.
pub fn universality_thresholds(g: &Graph, measures: &[Measure]) -> Result<Vec<ExtRational>, TruncatedError> {
    if measures.len() != g.n() {
        return Err(TruncatedError::Parameter(format!("{} measures for {} vertices", measures.len(), g.n())));
    }
    require_increasing(measures)?;
    Ok(own_values(measures, g)?.iter().map(to_ext).collect())
}

/// Every missing pair has an endpoint at or above its threshold, and
/// removing any edge drops both endpoints below theirs.
pub fn pareto_check(g: &Graph, measures: &[Measure], thresholds: &[ExtRational]) -> Result<bool, TruncatedError> {
    check_lengths(g.n(), measures, thresholds)?;
    let base = own_values(measures, g)?;
    for (i, j) in g.non_edges() {
        if below(&base[i], &thresholds[i]) && below(&base[j], &thresholds[j]) {
            return Ok(false);
        }
    }
    for (i, j) in g.edges() {
        let l = own_values(measures, &g.without_edge(i, j))?;
        if !below(&l[i], &thresholds[i]) || !below(&l[j], &thresholds[j]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pairs by decreasing weight, ties by `(min endpoint, max endpoint)`; zero
/// weights are skipped.
pub fn greedy_order(w: &WeightTable) -> Vec<(usize, usize)> {
    let n = w.n();
    let mut pairs: Vec<(usize, usize)> =
        (0..n * (n - 1) / 2).map(pair_from_index).filter(|&(i, j)| w.get(i, j) > 0).collect();
    pairs.sort_by(|a, b| w.get(b.0, b.1).cmp(&w.get(a.0, a.1)).then(a.cmp(b)));
    pairs
}

/// The existence construction for linear centralities: scan pairs by
/// decreasing weight, adding one whenever both endpoints are below threshold.
pub fn greedy_linear_apsn(w: &WeightTable, thresholds: &[ExtRational]) -> Result<Graph, TruncatedError> {
    let n = w.n();
    if thresholds.len() != n {
        return Err(TruncatedError::Parameter(format!("{} thresholds for {n} vertices", thresholds.len())));
    }
    let mut g = Graph::empty(n)?;
    let mut load = vec![0u64; n];
    let under = |k: usize, load: &[u64]| ExtRational::int(load[k] as i64) < thresholds[k];
    for (a, b) in greedy_order(w) {
        if under(a, &load) && under(b, &load) {
            g = g.with_edge(a, b);
            load[a] += w.get(a, b);
            load[b] += w.get(a, b);
        }
    }
    Ok(g)
}

/// `M_i = max{C_i[g+ij] : C_i[g] < θ_i}` over every graph on `n` vertices
/// and every missing pair at `i`, or 0 when no graph puts `i` below `θ_i`.
/// Also checks that `C_i[g] < θ_i ⟺ C_i[g+ij] ≤ M_i` on the same range.
pub fn compute_bounds(measures: &[Measure], thresholds: &[ExtRational]) -> Result<Vec<ExtRational>, TruncatedError> {
    let n = measures.len();
    check_lengths(n, measures, thresholds)?;
    if n > MAX_BOUND_SEARCH_VERTICES {
        return Err(TruncatedError::Size { n, max: MAX_BOUND_SEARCH_VERTICES });
    }
    if let Some(k) = measures.iter().position(|m| !m.is_exact()) {
        return Err(TruncatedError::Parameter(format!("bounds need exact measures; vertex {k} uses {}", measures[k])));
    }
    let total = enumerate_labeled_graphs(n)?.total();
    // Visits every (graph, i, j) with ij missing, passing C_i before and after.
    let scan = |visit: &(dyn Fn(&Graph, usize, usize, &Value, &Value) -> Option<PreconditionWitness> + Sync)| {
        (0..total).into_par_iter().try_for_each(|m| -> Result<(), TruncatedError> {
            let g = Graph::from_pair_mask(n, m as u128)?;
            let base = own_values(measures, &g)?;
            for (a, b) in g.non_edges() {
                let after = own_values(measures, &g.with_edge(a, b))?;
                for i in [a, b] {
                    if let Some(w) = visit(&g, i, a + b - i, &base[i], &after[i]) {
                        return Err(TruncatedError::Precondition(Box::new(w)));
                    }
                }
            }
            Ok(())
        })
    };
    let best: Vec<std::sync::Mutex<Option<ExtRational>>> = (0..n).map(|_| std::sync::Mutex::new(None)).collect();
    scan(&|_, i, _, before, after| {
        if below(before, &thresholds[i]) {
            let a = to_ext(after);
            let mut slot = best[i].lock().unwrap();
            if slot.as_ref().map_or(true, |b| a > *b) {
                *slot = Some(a);
            }
        }
        None
    })?;
    let bounds: Vec<ExtRational> =
        best.into_iter().map(|b| b.into_inner().unwrap().unwrap_or_else(ExtRational::zero)).collect();
    scan(&|g, i, j, before, after| {
        (below(before, &thresholds[i]) != at_most(after, &bounds[i])).then(|| PreconditionWitness {
            graph6: write_graph6(g),
            i,
            j,
            before: before.clone(),
            after: after.clone(),
            threshold: thresholds[i].clone(),
            bound: bounds[i].clone(),
        })
    })?;
    Ok(bounds)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaximalMember {
    pub graph: Graph,
    pub bounds: Vec<ExtRational>,
}

/// An edge-maximal graph with `C_l ≤ M_l` for every `l`, grown from the
/// empty graph by adding pairs in index order while the bounds allow.
pub fn maximal_member(
    n: usize,
    measures: &[Measure],
    thresholds: &[ExtRational],
    bounds: Option<&[ExtRational]>,
) -> Result<MaximalMember, TruncatedError> {
    check_lengths(n, measures, thresholds)?;
    if let Some(k) = measures.iter().position(|m| !m.is_regular()) {
        return Err(TruncatedError::Parameter(format!("measure {} of vertex {k} is not regular", measures[k])));
    }
    let bounds = match bounds {
        Some(b) if b.len() != n => {
            return Err(TruncatedError::Parameter(format!("{} bounds for {n} vertices", b.len())));
        }
        Some(b) => b.to_vec(),
        None => compute_bounds(measures, thresholds)?,
    };
    let mut g = Graph::empty(n)?;
    let mut cur = own_values(measures, &g)?;
    loop {
        let mut grew = false;
        for (i, j) in g.non_edges() {
            let h = g.with_edge(i, j);
            let next = own_values(measures, &h)?;
            for (a, b) in [(i, j), (j, i)] {
                if below(&cur[a], &thresholds[a]) != at_most(&next[a], &bounds[a]) {
                    return Err(TruncatedError::Precondition(Box::new(PreconditionWitness {
                        graph6: write_graph6(&g),
                        i: a,
                        j: b,
                        before: cur[a].clone(),
                        after: next[a].clone(),
                        threshold: thresholds[a].clone(),
                        bound: bounds[a].clone(),
                    })));
                }
            }
            if next.iter().zip(&bounds).all(|(v, m)| at_most(v, m)) {
                g = h;
                cur = next;
                grew = true;
            }
        }
        if !grew {
            return Ok(MaximalMember { graph: g, bounds });
        }
    }
}

/// Whether `g` is edge-maximal among graphs with `C_l ≤ M_l` for all `l`.
pub fn is_maximal_member(g: &Graph, measures: &[Measure], bounds: &[ExtRational]) -> Result<bool, TruncatedError> {
    let within = |h: &Graph| -> Result<bool, TruncatedError> {
        Ok(own_values(measures, h)?.iter().zip(bounds).all(|(v, m)| at_most(v, m)))
    };
    if !within(g)? {
        return Ok(false);
    }
    for (i, j) in g.non_edges() {
        if within(&g.with_edge(i, j))? {
            return Ok(false);
        }
    }
    Ok(true)
}
