//! Random-walk measures, solved exactly over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{rat, zero};
use crate::graph::{Bits, Graph};
use crate::linalg::{invert_exact, solve_exact};
use crate::value::ExtRational;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Expected steps for a simple random walk from each vertex to first reach
/// `target`. Zero at the target, `+∞` outside its component.
pub fn hitting_times(g: &Graph, target: usize) -> Vec<ExtRational> {
    let comp = g.component_of(target);
    let others: Vec<usize> = Bits(comp & !(1 << target)).collect();
    let mut out = vec![ExtRational::PosInf; g.n()];
    out[target] = ExtRational::zero();
    if others.is_empty() {
        return out;
    }
    let mut index = vec![usize::MAX; g.n()];
    for (k, &v) in others.iter().enumerate() {
        index[v] = k;
    }
    let m = others.len();
    let mut a = vec![vec![zero(); m]; m];
    let mut b = vec![zero(); m];
    for (r, &v) in others.iter().enumerate() {
        let d = g.degree(v) as i64;
        a[r][r] = int(d);
        b[r] = int(d);
        for w in g.neighbor_iter(v) {
            if w != target {
                a[r][index[w]] -= int(1);
            }
        }
    }
    let x = solve_exact(&a, &b).expect("hitting-time system is nonsingular on a connected component");
    for (k, v) in others.into_iter().enumerate() {
        out[v] = ExtRational::Finite(x[k].clone());
    }
    out
}

/// `1 / Σ_{j ∈ Conn(i)} ht[j,i]`; `+∞` for an isolated vertex.
pub fn rw_closeness(g: &Graph, i: usize) -> ExtRational {
    let total: BigRational = hitting_times(g, i).into_iter().filter_map(|h| h.finite().cloned()).sum();
    ExtRational::Finite(total).recip()
}

/// Inverse of the Laplacian of `comp` grounded at its smallest vertex, padded
/// with a zero row and column for the ground, indexed by global vertex.
pub(crate) fn grounded_inverse(g: &Graph, comp: u16) -> Vec<Vec<BigRational>> {
    let n = g.n();
    let verts: Vec<usize> = Bits(comp).collect();
    let rest = &verts[1..];
    let mut index = vec![usize::MAX; n];
    for (k, &v) in rest.iter().enumerate() {
        index[v] = k;
    }
    let m = rest.len();
    let mut lap = vec![vec![zero(); m]; m];
    for (r, &v) in rest.iter().enumerate() {
        lap[r][r] = int(g.degree(v) as i64);
        for w in g.neighbor_iter(v) {
            if index[w] != usize::MAX {
                lap[r][index[w]] = int(-1);
            }
        }
    }
    let inv = invert_exact(&lap).expect("grounded Laplacian of a connected component is nonsingular");
    let mut t = vec![vec![zero(); n]; n];
    for (r, &v) in rest.iter().enumerate() {
        for (c, &w) in rest.iter().enumerate() {
            t[v][w] = inv[r][c].clone();
        }
    }
    t
}

/// Current-flow betweenness: for each unordered pair `{s,t}` of other vertices
/// in `i`'s component, inject a unit current at `s`, extract it at `t`, and add
/// the current passing through `i`, `½ Σ_{j ∈ N(i)} |V_i − V_j|`.
pub fn rw_betweenness(g: &Graph, i: usize) -> BigRational {
    let comp = g.component_of(i);
    if comp.count_ones() < 3 {
        return zero();
    }
    let t = grounded_inverse(g, comp);
    let ends: Vec<usize> = Bits(comp & !(1 << i)).collect();
    let mut total = zero();
    for (a, &s) in ends.iter().enumerate() {
        for &dst in &ends[a + 1..] {
            let vi = &t[i][s] - &t[i][dst];
            for j in g.neighbor_iter(i) {
                let vj = &t[j][s] - &t[j][dst];
                total += (&vi - vj).abs();
            }
        }
    }
    total * rat(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_hitting_time_is_one() {
        let h = hitting_times(&Graph::complete(2).unwrap(), 0);
        assert_eq!(h, vec![ExtRational::zero(), ExtRational::int(1)]);
    }

    #[test]
    fn p3_hitting_times() {
        let g = Graph::path(3).unwrap();
        let to_mid = hitting_times(&g, 1);
        assert_eq!(to_mid[0], ExtRational::int(1));
        let to_end = hitting_times(&g, 2);
        assert_eq!(to_end[0], ExtRational::int(4));
        assert_eq!(to_end[1], ExtRational::int(3));
    }

    #[test]
    fn unreachable_is_infinite() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(hitting_times(&g, 0)[2], ExtRational::PosInf);
    }

    #[test]
    fn rw_closeness_p3() {
        let g = Graph::path(3).unwrap();
        // ht[0,1] + ht[2,1] = 2; ht[1,0] + ht[2,0] = 3 + 4.
        assert_eq!(rw_closeness(&g, 1), ExtRational::ratio(1, 2));
        assert_eq!(rw_closeness(&g, 0), ExtRational::ratio(1, 7));
    }

    #[test]
    fn current_flow_on_path_and_complete() {
        // Every unit of current between the ends of P3 goes through the middle.
        assert_eq!(rw_betweenness(&Graph::path(3).unwrap(), 1), rat(1, 1));
        assert_eq!(rw_betweenness(&Graph::path(3).unwrap(), 0), rat(0, 1));
        // In K_n each intermediate vertex carries 1/n of the s-t current,
        // and there are C(n-1, 2) pairs.
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(rw_betweenness(&k4, 0), rat(3, 4));
    }

    #[test]
    fn star_center_carries_everything() {
        assert_eq!(rw_betweenness(&Graph::star(3).unwrap(), 0), rat(3, 1));
    }
}
