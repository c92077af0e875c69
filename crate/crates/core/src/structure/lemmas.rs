//! Exhaustive checks of the betweenness and eccentricity edge-addition lemmas.

use rayon::prelude::*;
use serde::Serialize;

use super::StructureError;
use crate::centrality::{centralities, Measure};
use crate::graph::{enumerate_labeled_graphs, write_graph6, Distance, Graph};
use crate::value::{ExtRational, Value};

const VIOLATION_LOG: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaViolation {
    pub clause: &'static str,
    pub graph6: String,
    pub i: usize,
    pub j: usize,
    pub before: Value,
    pub after: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: &'static str,
    pub n_max: usize,
    pub flips_checked: u64,
    pub violation_total: u64,
    /// The first violations in scan order.
    pub violations: Vec<LemmaViolation>,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.violation_total == 0
    }
}

type Check = fn(&Graph) -> Result<(u64, Vec<LemmaViolation>), StructureError>;

fn run(lemma: &'static str, n_max: usize, check: Check) -> Result<LemmaReport, StructureError> {
    if n_max > super::MAX_FALSIFIER_VERTICES {
        return Err(StructureError::Size { n: n_max, max: super::MAX_FALSIFIER_VERTICES });
    }
    let mut report = LemmaReport { lemma, n_max, flips_checked: 0, violation_total: 0, violations: Vec::new() };
    for n in 2..=n_max {
        let total = enumerate_labeled_graphs(n)?.total();
        let parts: Vec<(u64, Vec<LemmaViolation>)> = (0..total)
            .into_par_iter()
            .map(|m| check(&Graph::from_pair_mask(n, m as u128)?))
            .collect::<Result<_, _>>()?;
        for (flips, v) in parts {
            report.flips_checked += flips;
            report.violation_total += v.len() as u64;
            report.violations.extend(v.into_iter().take(VIOLATION_LOG - report.violations.len().min(VIOLATION_LOG)));
        }
    }
    Ok(report)
}

fn exact(v: &Value) -> &ExtRational {
    v.exact().expect("exact measure")
}

fn betweenness_graph(g: &Graph) -> Result<(u64, Vec<LemmaViolation>), StructureError> {
    let base = centralities(&Measure::Betweenness, g)?;
    let mut flips = 0;
    let mut out = Vec::new();
    let mut push = |clause, i, j, before: &Value, after: &Value| {
        out.push(LemmaViolation { clause, graph6: write_graph6(g), i, j, before: before.clone(), after: after.clone() })
    };
    for (a, b) in g.non_edges() {
        let after = centralities(&Measure::Betweenness, &g.with_edge(a, b))?;
        let bridge = !g.same_component(a, b);
        for i in [a, b] {
            let j = a + b - i;
            flips += 1;
            let (x, y) = (exact(&base[i]), exact(&after[i]));
            if y < x {
                push(if bridge { "bridge addition weakly increases" } else { "non-bridge addition weakly increases" }, i, j, &base[i], &after[i]);
            } else if bridge && !g.is_isolated(i) && y == x {
                push("bridge addition strictly increases unless isolated", i, j, &base[i], &after[i]);
            }
        }
    }
    for (a, b) in g.edges() {
        if !g.is_bridge(a, b) {
            continue;
        }
        let after = centralities(&Measure::Betweenness, &g.without_edge(a, b))?;
        for i in [a, b] {
            flips += 1;
            let improving = exact(&after[i]) >= exact(&base[i]);
            if improving != (g.degree(i) == 1) {
                push("bridge removal improving iff pendant", i, a + b - i, &base[i], &after[i]);
            }
        }
    }
    Ok((flips, out))
}

/// Every shortest `i`–`k` path in `h = g + ij` uses the edge `ij`, for every
/// `k` at maximum distance from `i` in `g`.
pub(crate) fn j_on_all_farthest_paths(g: &Graph, i: usize, j: usize) -> bool {
    let h = g.with_edge(i, j);
    let (di, si) = h.path_counts(i);
    let (dj, sj) = h.path_counts(j);
    let dist_g = g.bfs_levels(i);
    let ecc = g.eccentricity(i);
    (0..g.n()).filter(|&k| dist_g[k] == Distance::Finite(ecc) && k != i).all(|k| match (di[k], dj[k]) {
        (Distance::Finite(a), Distance::Finite(b)) => a == b + 1 && si[k] == sj[k],
        _ => false,
    })
}

fn eccentricity_graph(g: &Graph) -> Result<(u64, Vec<LemmaViolation>), StructureError> {
    let base = centralities(&Measure::Eccentricity, g)?;
    let mut flips = 0;
    let mut out = Vec::new();
    for (a, b) in g.non_edges() {
        let after = centralities(&Measure::Eccentricity, &g.with_edge(a, b))?;
        for i in [a, b] {
            let j = a + b - i;
            flips += 1;
            let (x, y) = (exact(&base[i]), exact(&after[i]));
            let clause = if !g.same_component(i, j) {
                (y > x).then_some("cross-component addition does not increase")
            } else if y < x {
                Some("same-component addition does not decrease")
            } else if (y > x) != j_on_all_farthest_paths(g, i, j) {
                Some("strict increase iff j is on every shortest path to the farthest vertices")
            } else {
                None
            };
            if let Some(clause) = clause {
                out.push(LemmaViolation { clause, graph6: write_graph6(g), i, j, before: base[i].clone(), after: after[i].clone() });
            }
        }
    }
    Ok((flips, out))
}

/// Bridge additions weakly raise betweenness (strictly unless the vertex was
/// isolated), a bridge removal is improving exactly for pendant endpoints, and
/// non-bridge additions weakly raise betweenness.
pub fn check_betweenness_lemma(n_max: usize) -> Result<LemmaReport, StructureError> {
    run("betweenness", n_max, betweenness_graph)
}

/// Cross-component additions never raise eccentricity centrality;
/// same-component additions never lower it, and raise it exactly when `j`
/// lies on every shortest path to the vertices farthest from `i`.
pub fn check_eccentricity_lemma(n_max: usize) -> Result<LemmaReport, StructureError> {
    run("eccentricity", n_max, eccentricity_graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strictness_is_about_paths_after_the_addition() {
        // Path i-a-b-c-k with j hanging off c: j is on no shortest i-k path in g,
        // yet adding ij shortens the way to both farthest vertices.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]).unwrap();
        assert!(j_on_all_farthest_paths(&g, 0, 5));
        let before = centralities(&Measure::Eccentricity, &g).unwrap().swap_remove(0);
        let after = centralities(&Measure::Eccentricity, &g.with_edge(0, 5)).unwrap().swap_remove(0);
        assert!(exact(&after) > exact(&before));
    }

    #[test]
    fn betweenness_lemma_small() {
        let r = check_betweenness_lemma(5).unwrap();
        assert!(r.holds(), "{:?}", r.violations.first());
        assert!(r.flips_checked > 0);
    }

    #[test]
    fn isolated_vertex_gains_eccentricity_on_a_bridge() {
        let r = check_eccentricity_lemma(3).unwrap();
        assert!(!r.holds());
        assert!(r
            .violations
            .iter()
            .all(|v| v.clause == "cross-component addition does not increase" && v.before == Value::zero()));
    }
}
