//! Shortest-path and neighborhood based measures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, zero, CentralityError, WeightTable};
use crate::graph::{Bits, Distance, Graph};
use crate::value::ExtRational;

pub fn linear(w: &WeightTable, g: &Graph, i: usize) -> Result<BigRational, CentralityError> {
    if w.n() != g.n() {
        return Err(CentralityError::Weights(format!(
            "table has {} vertices but the graph has {}",
            w.n(),
            g.n()
        )));
    }
    let s: u64 = g.neighbor_iter(i).map(|j| w.get(i, j)).sum();
    Ok(BigRational::from_integer(BigInt::from(s)))
}

/// `1 / Σ_{j ∈ Conn(i)} d(i,j)`; an isolated vertex gets `1/0 = +∞`.
pub fn closeness(g: &Graph, i: usize) -> ExtRational {
    let total: u64 = g.bfs_levels(i).into_iter().filter_map(Distance::finite).map(u64::from).sum();
    ExtRational::Finite(BigRational::from_integer(BigInt::from(total))).recip()
}

/// `(n-1) / max_{j ∈ Conn(i)} d(i,j)`, or 0 when `i` is isolated.
pub fn eccentricity(g: &Graph, i: usize) -> BigRational {
    match g.eccentricity(i) {
        0 => zero(),
        e => rat(g.n() as i64 - 1, e as i64),
    }
}

pub fn harmonic(g: &Graph, i: usize) -> BigRational {
    g.bfs_levels(i)
        .into_iter()
        .filter_map(Distance::finite)
        .filter(|&d| d > 0)
        .map(|d| rat(1, d as i64))
        .sum()
}

pub fn decay(beta: &BigRational, g: &Graph, i: usize) -> BigRational {
    let levels = g.bfs_levels(i);
    let max = levels.iter().filter_map(|d| d.finite()).max().unwrap_or(0) as usize;
    let mut powers = vec![BigRational::one(); max + 1];
    for d in 1..=max {
        powers[d] = &powers[d - 1] * beta;
    }
    levels
        .into_iter()
        .filter_map(Distance::finite)
        .filter(|&d| d > 0)
        .map(|d| powers[d as usize].clone())
        .sum()
}

/// `Σ_{j ∈ N̂(i)} 1/(deg(j)+1)`.
pub fn game_theoretic(g: &Graph, i: usize) -> BigRational {
    Bits(g.closed_neighbors(i)).map(|j| rat(1, g.degree(j) as i64 + 1)).sum()
}

/// Betweenness of every vertex over unordered pairs, by Brandes' dependency
/// accumulation. Pairs in different components contribute nothing.
pub fn betweenness_all(g: &Graph) -> Vec<BigRational> {
    let n = g.n();
    let mut total = vec![BigRational::zero(); n];
    for s in 0..n {
        let (dist, sigma) = g.path_counts(s);
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[v].is_finite()).collect();
        order.sort_by_key(|&v| dist[v]);
        let mut delta = vec![BigRational::zero(); n];
        for &w in order.iter().rev() {
            let Distance::Finite(dw) = dist[w] else { unreachable!() };
            if dw == 0 {
                continue;
            }
            let coeff = (BigRational::one() + &delta[w]) / BigRational::from_integer(BigInt::from(sigma[w]));
            for v in g.neighbor_iter(w) {
                if dist[v] == Distance::Finite(dw - 1) {
                    delta[v] += &coeff * BigRational::from_integer(BigInt::from(sigma[v]));
                }
            }
            total[w] += &delta[w];
        }
    }
    let half = rat(1, 2);
    total.into_iter().map(|t| t * &half).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_center_betweenness() {
        let b = betweenness_all(&Graph::star(3).unwrap());
        assert_eq!(b[0], rat(3, 1));
        assert_eq!(b[1], rat(0, 1));
    }

    #[test]
    fn c4_betweenness() {
        let b = betweenness_all(&Graph::cycle(4).unwrap());
        assert!(b.iter().all(|x| *x == rat(1, 2)));
    }

    #[test]
    fn complete_graph_betweenness_is_zero() {
        assert!(betweenness_all(&Graph::complete(5).unwrap()).iter().all(Zero::is_zero));
    }

    #[test]
    fn path_betweenness() {
        // P5: vertex k separates k*(4-k) pairs.
        let b = betweenness_all(&Graph::path(5).unwrap());
        assert_eq!(b, vec![rat(0, 1), rat(3, 1), rat(4, 1), rat(3, 1), rat(0, 1)]);
    }

    #[test]
    fn harmonic_and_eccentricity_on_path() {
        let g = Graph::path(4).unwrap();
        assert_eq!(harmonic(&g, 0), rat(11, 6));
        assert_eq!(eccentricity(&g, 0), rat(1, 1));
        assert_eq!(eccentricity(&g, 1), rat(3, 2));
    }

    #[test]
    fn game_theoretic_star() {
        let g = Graph::star(3).unwrap();
        assert_eq!(game_theoretic(&g, 0), rat(1, 4) + rat(3, 2));
        assert_eq!(game_theoretic(&g, 1), rat(1, 2) + rat(1, 4));
    }

    #[test]
    fn decay_ignores_other_components() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(decay(&rat(1, 3), &g, 0), rat(1, 3));
        assert_eq!(decay(&rat(1, 3), &Graph::empty(2).unwrap(), 0), rat(0, 1));
    }
}
