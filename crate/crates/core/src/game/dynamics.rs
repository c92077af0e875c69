//! Myopic improving-flip dynamics.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{is_apsn, FlipKind, GameError, GameSpec};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DynamicsRule {
    /// Uniformly random improving flip.
    Random,
    /// First improving flip in scan order (additions, then removals).
    FirstBlocking,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub i: usize,
    pub j: usize,
    pub kind: FlipKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub start: Graph,
    pub steps: Vec<Step>,
    pub final_graph: Graph,
    /// No improving flip remains in `final_graph`.
    pub converged: bool,
}

pub fn best_response_dynamics(
    spec: &GameSpec,
    g0: &Graph,
    max_steps: usize,
    seed: u64,
    rule: DynamicsRule,
) -> Result<Trajectory, GameError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = *g0;
    let mut steps = Vec::new();
    loop {
        let report = is_apsn(spec, &g)?;
        if report.blocking_flips.is_empty() {
            return Ok(Trajectory { start: *g0, steps, final_graph: g, converged: true });
        }
        if steps.len() == max_steps {
            return Ok(Trajectory { start: *g0, steps, final_graph: g, converged: false });
        }
        let pick = match rule {
            DynamicsRule::FirstBlocking => 0,
            DynamicsRule::Random => rng.gen_range(0..report.blocking_flips.len()),
        };
        let f = &report.blocking_flips[pick];
        g = g.flipped(f.i, f.j);
        steps.push(Step { i: f.i, j: f.j, kind: f.kind });
    }
}
