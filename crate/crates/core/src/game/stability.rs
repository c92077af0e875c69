//! Asymptotic pairwise stability and its finite-cost counterpart.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::moves::{agent_values, FlipEvaluator};
use super::{AgentProfile, FlipRecord, GameError, GameSpec};
use crate::graph::{pair_from_index, Graph};
use crate::value::{ExtRational, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Stable,
    Unstable,
    /// No robustly improving flip, but some flip's verdict depends on deltas
    /// inside the tolerance band.
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StabilityReport {
    /// No flip is nominally improving.
    pub stable: bool,
    pub verdict: Verdict,
    pub blocking_flips: Vec<FlipRecord>,
    pub ambiguous_flips: Vec<FlipRecord>,
}

/// Pairs in scan order: additions by pair index, then removals by pair index.
pub(crate) fn flip_order(g: &Graph) -> impl Iterator<Item = (usize, usize)> + '_ {
    let pairs = g.n() * (g.n() - 1) / 2;
    let adds = (0..pairs).map(pair_from_index).filter(|&(i, j)| !g.has_edge(i, j));
    let removes = (0..pairs).map(pair_from_index).filter(|&(i, j)| g.has_edge(i, j));
    adds.chain(removes)
}

/// Full report listing every improving flip.
pub fn is_apsn(spec: &GameSpec, g: &Graph) -> Result<StabilityReport, GameError> {
    let eval = FlipEvaluator::new(spec, g)?;
    let mut blocking_flips = Vec::new();
    let mut ambiguous_flips = Vec::new();
    let mut robust_block = false;
    for (i, j) in flip_order(g) {
        let rec = eval.evaluate(i, j)?;
        robust_block |= rec.blocking && rec.robust;
        if !rec.robust {
            ambiguous_flips.push(rec.clone());
        }
        if rec.blocking {
            blocking_flips.push(rec);
        }
    }
    let verdict = if robust_block {
        Verdict::Unstable
    } else if !ambiguous_flips.is_empty() {
        Verdict::Ambiguous
    } else {
        Verdict::Stable
    };
    Ok(StabilityReport { stable: blocking_flips.is_empty(), verdict, blocking_flips, ambiguous_flips })
}

/// Same verdict as [`is_apsn`], stopping at the first robustly improving flip.
pub fn apsn_verdict(spec: &GameSpec, g: &Graph) -> Result<Verdict, GameError> {
    let eval = FlipEvaluator::new(spec, g)?;
    let mut ambiguous = false;
    for (i, j) in flip_order(g) {
        let rec = eval.evaluate(i, j)?;
        if rec.blocking && rec.robust {
            return Ok(Verdict::Unstable);
        }
        ambiguous |= !rec.robust;
    }
    Ok(if ambiguous { Verdict::Ambiguous } else { Verdict::Stable })
}

fn exact_numeric(spec: &GameSpec, g: &Graph) -> Result<(), GameError> {
    spec.check_size(g.n())?;
    if !spec.is_exact() {
        return Err(GameError::NeedsExact);
    }
    if let Some(k) = spec.agents().iter().position(|a| !matches!(a, AgentProfile::Numeric { .. })) {
        return Err(GameError::RuleAgent { agent: k });
    }
    Ok(())
}

fn exact(v: &Value) -> &ExtRational {
    v.exact().expect("exact policy yields exact values")
}

/// Pairwise stability with utilities `C_i − c·deg(i)` at a fixed cost `c`.
pub fn finite_cost_check(spec: &GameSpec, g: &Graph, c: &BigRational) -> Result<bool, GameError> {
    exact_numeric(spec, g)?;
    let cost = ExtRational::Finite(c.clone());
    let base = agent_values(spec, g, &g.vertices().collect::<Vec<_>>())?;
    for (i, j) in flip_order(g) {
        let after = agent_values(spec, &g.flipped(i, j), &[i, j])?;
        let mut du = Vec::with_capacity(2);
        for (slot, k) in [i, j].into_iter().enumerate() {
            let dc = exact(&after[slot]).checked_sub(exact(&base[k]))?;
            du.push(if g.has_edge(i, j) { dc.checked_add(&cost)? } else { dc.checked_sub(&cost)? });
        }
        let improving = if g.has_edge(i, j) {
            du.iter().any(|d| d.signum() == Ordering::Greater)
        } else {
            du.iter().all(|d| d.signum() != Ordering::Less) && du.iter().any(|d| d.signum() == Ordering::Greater)
        };
        if improving {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A cost small enough that pairwise stability at that cost coincides with
/// asymptotic stability: half the smallest nonzero finite `|ΔC|`, or 1 when
/// every delta is zero or infinite.
pub fn epsilon_witness(spec: &GameSpec, g: &Graph) -> Result<BigRational, GameError> {
    exact_numeric(spec, g)?;
    let eval = FlipEvaluator::new(spec, g)?;
    let mut best: Option<BigRational> = None;
    for (i, j) in flip_order(g) {
        let rec = eval.evaluate(i, j)?;
        for d in rec.deltas.iter().flatten() {
            if let ExtRational::Finite(r) = exact(d) {
                let a = r.abs();
                if a.is_positive() && best.as_ref().map_or(true, |b| a < *b) {
                    best = Some(a);
                }
            }
        }
    }
    Ok(match best {
        Some(b) => b / BigRational::from_integer(BigInt::from(2)),
        None => BigRational::one(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::Measure;
    use crate::game::NumericPolicy;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn decay_k4_stable_and_subgraphs_not() {
        let spec = GameSpec::uniform(Measure::decay(1, 2).unwrap(), 4).unwrap();
        let k4 = Graph::complete(4).unwrap();
        let r = is_apsn(&spec, &k4).unwrap();
        assert!(r.stable && r.verdict == Verdict::Stable);
        for (i, j) in k4.edges() {
            assert!(!is_apsn(&spec, &k4.without_edge(i, j)).unwrap().stable);
        }
    }

    #[test]
    fn betweenness_c4_stable() {
        let spec = GameSpec::uniform(Measure::Betweenness, 4).unwrap();
        assert!(is_apsn(&spec, &Graph::cycle(4).unwrap()).unwrap().stable);
    }

    #[test]
    fn degree_finite_costs_on_k3() {
        let spec = GameSpec::uniform(Measure::Degree, 3).unwrap();
        let k3 = Graph::complete(3).unwrap();
        assert!(finite_cost_check(&spec, &k3, &q(1, 2)).unwrap());
        assert!(!finite_cost_check(&spec, &k3, &q(2, 1)).unwrap());
        assert_eq!(epsilon_witness(&spec, &k3).unwrap(), q(1, 2));
    }

    #[test]
    fn verdict_matches_full_report() {
        let spec = GameSpec::uniform(Measure::Harmonic, 4).unwrap();
        for m in 0..64u128 {
            let g = Graph::from_pair_mask(4, m).unwrap();
            let r = is_apsn(&spec, &g).unwrap();
            assert_eq!(apsn_verdict(&spec, &g).unwrap(), r.verdict);
            assert_eq!(r.stable, r.blocking_flips.is_empty());
            assert!(r.ambiguous_flips.is_empty());
        }
    }

    #[test]
    fn finite_cost_needs_exact_numeric_agents() {
        let g = Graph::complete(3).unwrap();
        let rules = GameSpec::monotone(&[crate::game::MonotoneType::One; 3]);
        assert!(matches!(finite_cost_check(&rules, &g, &q(1, 2)), Err(GameError::RuleAgent { .. })));
        let eig = GameSpec::new(vec![AgentProfile::numeric(Measure::Eigenvector); 3], NumericPolicy::tolerant()).unwrap();
        assert_eq!(epsilon_witness(&eig, &g), Err(GameError::NeedsExact));
    }
}
