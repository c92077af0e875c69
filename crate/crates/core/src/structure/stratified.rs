//! Rich-club networks of degree-homophilic agents: disjoint cliques of
//! strictly decreasing sizes plus isolated vertices.

use serde::Serialize;

use super::StructureError;
use crate::game::Homophily;
use crate::graph::{Bits, Graph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueSequence {
    /// Clique sizes `a_1 > … > a_p > 1`.
    pub sizes: Vec<usize>,
    /// Number of isolated vertices.
    pub isolated: usize,
}

impl CliqueSequence {
    pub fn vertex_count(&self) -> usize {
        self.sizes.iter().sum::<usize>() + self.isolated
    }

    /// `K_{a_1} + … + K_{a_p} + r K_1`, cliques on consecutive labels.
    pub fn graph(&self) -> Result<Graph, StructureError> {
        let mut edges = Vec::new();
        let mut start = 0;
        for &a in &self.sizes {
            for u in start..start + a {
                for v in u + 1..start + a {
                    edges.push((u, v));
                }
            }
            start += a;
        }
        Ok(Graph::from_edges(self.vertex_count(), &edges)?)
    }

    /// `a_k − 1 > f(a_{k+1} − 1)` for every `k`, with `a_{p+1} = 1`.
    pub fn satisfies(&self, f: &Homophily) -> Result<bool, StructureError> {
        if self.sizes.iter().any(|&a| a < 2) || self.sizes.windows(2).any(|w| w[0] <= w[1]) {
            return Ok(false);
        }
        let mut next = self.sizes.iter().skip(1).copied().chain(std::iter::once(1));
        for &a in &self.sizes {
            let b = next.next().expect("one successor per size");
            if (a as i64 - 1) <= f.eval(b - 1)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Checks `f` on degrees `0..n`: strictly increasing, `f(0) ≤ −1` and
/// `f(x) ≥ x` for `x ≥ 1`.
pub fn validate_homophily(f: &Homophily, n: usize) -> Result<(), StructureError> {
    let bad = |s: String| StructureError::Homophily(s);
    f.validate().map_err(|e| bad(e.to_string()))?;
    let top = n.saturating_sub(1);
    let vals: Vec<i64> = (0..=top).map(|d| f.eval(d)).collect::<Result<_, _>>().map_err(|e| bad(e.to_string()))?;
    if vals[0] > -1 {
        return Err(bad(format!("f(0) = {} but must be at most -1", vals[0])));
    }
    if let Some(x) = (1..vals.len()).find(|&x| vals[x] < x as i64) {
        return Err(bad(format!("f({x}) = {} is below {x}", vals[x])));
    }
    Ok(())
}

/// Whether `g` is a stratified clique graph for `f`.
pub fn is_stratified(g: &Graph, f: &Homophily) -> Result<bool, StructureError> {
    validate_homophily(f, g.n())?;
    let mut sizes = Vec::new();
    let mut isolated = 0;
    for comp in g.components() {
        if !g.is_clique(comp) {
            return Ok(false);
        }
        match Bits(comp).count() {
            1 => isolated += 1,
            a => sizes.push(a),
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    CliqueSequence { sizes, isolated }.satisfies(f)
}

/// Every valid sequence with `Σ a_k + r = n`, largest cliques first.
pub fn stratified_sequences(n: usize, f: &Homophily) -> Result<Vec<CliqueSequence>, StructureError> {
    validate_homophily(f, n)?;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend(n, n, f, &mut prefix, &mut out)?;
    Ok(out)
}

fn extend(
    n: usize,
    below: usize,
    f: &Homophily,
    prefix: &mut Vec<usize>,
    out: &mut Vec<CliqueSequence>,
) -> Result<(), StructureError> {
    let used: usize = prefix.iter().sum();
    let seq = CliqueSequence { sizes: prefix.clone(), isolated: n - used };
    if seq.satisfies(f)? {
        out.push(seq);
    }
    for a in (2..=below.min(n - used)).rev() {
        // A prefix that fails on its last pair cannot be repaired by appending.
        if let Some(&last) = prefix.last() {
            if (last as i64 - 1) <= f.eval(a - 1)? {
                continue;
            }
        }
        prefix.push(a);
        extend(n, a - 1, f, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn game_theoretic_examples() {
        let f = Homophily::GameTheoretic;
        let k5k1 = Graph::complete(5).unwrap().with_isolated(1).unwrap();
        assert!(is_stratified(&k5k1, &f).unwrap());
        let k2k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_stratified(&k2k2, &f).unwrap());
        assert!(is_stratified(&Graph::complete(3).unwrap(), &f).unwrap());
        assert!(!is_stratified(&Graph::path(3).unwrap(), &f).unwrap());
    }

    #[test]
    fn sequences_at_six() {
        let seqs = stratified_sequences(6, &Homophily::GameTheoretic).unwrap();
        // Two cliques need a_1 − 1 > f(1) = 3, so a_1 ≥ 5, leaving no room for a_2 ≥ 2.
        let sizes: Vec<Vec<usize>> = seqs.iter().map(|s| s.sizes.clone()).collect();
        assert_eq!(sizes, vec![vec![], vec![6], vec![5], vec![4], vec![3], vec![2]]);
        assert!(seqs.iter().all(|s| s.vertex_count() == 6));
    }

    #[test]
    fn table_allows_two_levels() {
        // f(0) = -1, f(1) = 1, f(2) = 2, ...: K4 + K2 is valid since 3 > f(1).
        let f = Homophily::Table(vec![-1, 1, 2, 3, 4, 5]);
        let seqs = stratified_sequences(6, &f).unwrap();
        assert!(seqs.contains(&CliqueSequence { sizes: vec![4, 2], isolated: 0 }));
        assert!(seqs.contains(&CliqueSequence { sizes: vec![3, 2], isolated: 1 }));
        assert!(!stratified_sequences(6, &Homophily::GameTheoretic).unwrap().iter().any(|s| s.sizes.len() > 1));
        for s in &seqs {
            assert!(is_stratified(&s.graph().unwrap(), &f).unwrap());
        }
    }

    #[test]
    fn hypotheses_enforced() {
        assert!(matches!(validate_homophily(&Homophily::Table(vec![0, 1, 2]), 3), Err(StructureError::Homophily(_))));
        assert!(matches!(validate_homophily(&Homophily::Table(vec![-1, 0, 2]), 3), Err(StructureError::Homophily(_))));
        assert!(matches!(validate_homophily(&Homophily::Table(vec![-1, 3]), 3), Err(StructureError::Homophily(_))));
        assert!(validate_homophily(&Homophily::GameTheoretic, 16).is_ok());
    }
}
