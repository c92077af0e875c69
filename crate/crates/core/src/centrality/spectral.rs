//! Eigenvector, Katz and PageRank scores in floating point.

use super::CentralityError;
use crate::graph::Graph;
use crate::linalg::solve_f64;
use crate::value::Value;

const CONVERGENCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralScores {
    pub scores: Vec<f64>,
    pub iterations: usize,
    /// Set when the graph is disconnected and the leading eigenvector is not
    /// uniquely determined by the graph alone.
    pub degenerate: bool,
}

pub(crate) fn to_values(scores: Vec<f64>) -> Vec<Value> {
    scores.into_iter().map(Value::approx).collect()
}

/// Power iteration with `A + I`, which has the same leading eigenvector as `A`
/// but does not oscillate on bipartite graphs.
fn shifted_power_iteration(g: &Graph) -> Result<(Vec<f64>, usize), CentralityError> {
    let n = g.n();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for it in 1..=MAX_ITERATIONS {
        let mut y: Vec<f64> = (0..n).map(|i| x[i] + g.neighbor_iter(i).map(|j| x[j]).sum::<f64>()).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut y {
            *v /= norm;
        }
        let diff = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if diff < CONVERGENCE {
            return Ok((x, it));
        }
    }
    Err(CentralityError::Convergence { what: "eigenvector power iteration", iterations: MAX_ITERATIONS })
}

pub fn eigenvector_scores(g: &Graph) -> Result<SpectralScores, CentralityError> {
    let (scores, iterations) = shifted_power_iteration(g)?;
    Ok(SpectralScores { scores, iterations, degenerate: !g.is_connected() })
}

/// Largest adjacency eigenvalue, from the Rayleigh quotient of the converged
/// power iterate.
pub fn lambda_max(g: &Graph) -> Result<f64, CentralityError> {
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    let (x, _) = shifted_power_iteration(g)?;
    let ax: f64 = (0..g.n()).map(|i| x[i] * g.neighbor_iter(i).map(|j| x[j]).sum::<f64>()).sum();
    Ok(ax / x.iter().map(|v| v * v).sum::<f64>())
}

/// Default attenuation: `1/(2(n−1))`, below `1/λmax` for every graph on `n`
/// vertices, so it does not change between a graph and its edge flips.
pub fn default_katz_alpha(n: usize) -> f64 {
    if n > 1 {
        1.0 / (2.0 * (n as f64 - 1.0))
    } else {
        0.5
    }
}

/// `x = Σ_{k≥1} α^k A^k 1`, i.e. `(I − αA) x = αA1`.
pub fn katz_scores(g: &Graph, alpha: Option<f64>) -> Result<SpectralScores, CentralityError> {
    let n = g.n();
    let alpha = alpha.unwrap_or_else(|| default_katz_alpha(n));
    if alpha * g.max_degree() as f64 >= 1.0 {
        let lambda = lambda_max(g)?;
        if alpha * lambda >= 1.0 - 1e-12 {
            return Err(CentralityError::Parameter(format!(
                "katz attenuation {alpha} times the largest eigenvalue {lambda:.6} is not below 1"
            )));
        }
    }
    let a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1.0 } else if g.has_edge(i, j) { -alpha } else { 0.0 })
                .collect()
        })
        .collect();
    let b: Vec<f64> = (0..n).map(|i| alpha * g.degree(i) as f64).collect();
    let scores = solve_f64(&a, &b)
        .ok_or_else(|| CentralityError::Parameter(format!("katz system singular for attenuation {alpha}")))?;
    Ok(SpectralScores { scores, iterations: 0, degenerate: false })
}

/// PageRank with uniform teleportation; isolated vertices spread their mass
/// uniformly.
pub fn pagerank_scores(g: &Graph, damping: f64) -> Result<SpectralScores, CentralityError> {
    let n = g.n();
    let nf = n as f64;
    let mut x = vec![1.0 / nf; n];
    for it in 1..=MAX_ITERATIONS {
        let dangling: f64 = (0..n).filter(|&i| g.is_isolated(i)).map(|i| x[i]).sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        let y: Vec<f64> = (0..n)
            .map(|i| base + damping * g.neighbor_iter(i).map(|j| x[j] / g.degree(j) as f64).sum::<f64>())
            .collect();
        let diff = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = y;
        if diff < CONVERGENCE {
            return Ok(SpectralScores { scores: x, iterations: it, degenerate: false });
        }
    }
    Err(CentralityError::Convergence { what: "pagerank power iteration", iterations: MAX_ITERATIONS })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn eigenvector_of_regular_graph_is_uniform() {
        let s = eigenvector_scores(&Graph::cycle(5).unwrap()).unwrap();
        assert!(s.scores.iter().all(|&v| close(v, 1.0 / 5f64.sqrt())));
        assert!(!s.degenerate);
    }

    #[test]
    fn eigenvector_star_converges_despite_bipartite() {
        // K_{1,3}: λ = √3, center/leaf ratio √3.
        let s = eigenvector_scores(&Graph::star(3).unwrap()).unwrap();
        assert!(close(s.scores[0] / s.scores[1], 3f64.sqrt()));
    }

    #[test]
    fn disconnected_is_flagged() {
        assert!(eigenvector_scores(&Graph::from_edges(3, &[(0, 1)]).unwrap()).unwrap().degenerate);
    }

    #[test]
    fn lambda_max_values() {
        assert!(close(lambda_max(&Graph::complete(4).unwrap()).unwrap(), 3.0));
        assert!(close(lambda_max(&Graph::star(4).unwrap()).unwrap(), 2.0));
        assert_eq!(lambda_max(&Graph::empty(3).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn katz_k2() {
        // x = αx' + α on K2 with symmetry: x = α/(1−α).
        let s = katz_scores(&Graph::complete(2).unwrap(), Some(0.25)).unwrap();
        assert!(close(s.scores[0], 0.25 / 0.75));
    }

    #[test]
    fn katz_rejects_large_alpha() {
        assert!(matches!(katz_scores(&Graph::complete(4).unwrap(), Some(0.4)), Err(CentralityError::Parameter(_))));
        assert!(katz_scores(&Graph::star(4).unwrap(), Some(0.4)).is_ok());
    }

    #[test]
    fn pagerank_sums_to_one() {
        for g in [Graph::star(4).unwrap(), Graph::from_edges(4, &[(0, 1)]).unwrap(), Graph::empty(3).unwrap()] {
            let s = pagerank_scores(&g, 0.85).unwrap();
            assert!(close(s.scores.iter().sum::<f64>(), 1.0));
        }
        let s = pagerank_scores(&Graph::cycle(4).unwrap(), 0.85).unwrap();
        assert!(s.scores.iter().all(|&v| close(v, 0.25)));
    }
}
