//! Slow reference implementations used to cross-check the fast measures.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{rat, CentralityError};
use crate::graph::{Bits, Graph, GraphError};
use crate::linalg::invert_exact;

pub const ORACLE_MAX_VERTICES: usize = 7;

fn guard(g: &Graph) -> Result<(), CentralityError> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n: g.n(), max: ORACLE_MAX_VERTICES }.into());
    }
    Ok(())
}

/// Shapley value of `i` in the coverage game `v(S) = |S ∪ N(S)|`, averaging
/// marginal contributions over every arrival order.
pub fn brute_shapley(g: &Graph, i: usize) -> Result<BigRational, CentralityError> {
    guard(g)?;
    g.check_vertex(i)?;
    let n = g.n();
    let cover = |s: u16| Bits(s).fold(s, |acc, v| acc | g.neighbors(v));
    let mut total: u64 = 0;
    let mut orders: u64 = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut visit = |perm: &[usize]| {
        let mut before = 0u16;
        for &v in perm {
            if v == i {
                break;
            }
            before |= 1 << v;
        }
        total += u64::from(cover(before | 1 << i).count_ones() - cover(before).count_ones());
        orders += 1;
    };
    visit(&perm);
    let mut k = 1;
    while k < n {
        if c[k] < k {
            if k % 2 == 0 {
                perm.swap(0, k);
            } else {
                perm.swap(c[k], k);
            }
            visit(&perm);
            c[k] += 1;
            k = 1;
        } else {
            c[k] = 0;
            k += 1;
        }
    }
    Ok(BigRational::new(BigInt::from(total), BigInt::from(orders)))
}

/// Betweenness by listing every simple path between each unordered pair.
pub fn brute_betweenness(g: &Graph, i: usize) -> Result<BigRational, CentralityError> {
    guard(g)?;
    g.check_vertex(i)?;
    let n = g.n();
    let mut total = BigRational::zero();
    for y in 0..n {
        for z in y + 1..n {
            if y == i || z == i {
                continue;
            }
            let mut paths: Vec<(usize, bool)> = Vec::new();
            let mut stack = vec![y];
            simple_paths(g, z, i, 1 << y, &mut stack, &mut paths);
            let Some(shortest) = paths.iter().map(|p| p.0).min() else { continue };
            let all = paths.iter().filter(|p| p.0 == shortest).count() as i64;
            let through = paths.iter().filter(|p| p.0 == shortest && p.1).count() as i64;
            total += rat(through, all);
        }
    }
    Ok(total)
}

fn simple_paths(
    g: &Graph,
    target: usize,
    watch: usize,
    used: u16,
    stack: &mut Vec<usize>,
    out: &mut Vec<(usize, bool)>,
) {
    let v = *stack.last().unwrap();
    if v == target {
        out.push((stack.len() - 1, stack.contains(&watch)));
        return;
    }
    for w in Bits(g.neighbors(v) & !used) {
        stack.push(w);
        simple_paths(g, target, watch, used | 1 << w, stack, out);
        stack.pop();
    }
}

/// Current-flow betweenness via the absorbing random walk: with `t` absorbing,
/// `G = (I − Q)^{-1}` counts expected visits, and `G(s,v)/deg(v)` is the
/// potential at `v` for a unit current from `s` to `t`.
pub fn rw_betweenness_absorbing(g: &Graph, i: usize) -> Result<BigRational, CentralityError> {
    guard(g)?;
    g.check_vertex(i)?;
    let comp = g.component_of(i);
    let mut total = BigRational::zero();
    for t in Bits(comp & !(1 << i)) {
        let states: Vec<usize> = Bits(comp & !(1 << t)).collect();
        let mut index = vec![usize::MAX; g.n()];
        for (k, &v) in states.iter().enumerate() {
            index[v] = k;
        }
        let m = states.len();
        let mut a = vec![vec![BigRational::zero(); m]; m];
        for (r, &v) in states.iter().enumerate() {
            a[r][r] = BigRational::one();
            let p = rat(1, g.degree(v) as i64);
            for w in g.neighbor_iter(v) {
                if w != t {
                    a[r][index[w]] -= &p;
                }
            }
        }
        let green = invert_exact(&a).expect("absorbing chain on a connected component");
        let potential = |s: usize, v: usize| -> BigRational {
            if v == t {
                BigRational::zero()
            } else {
                &green[index[s]][index[v]] / BigRational::from_integer(BigInt::from(g.degree(v)))
            }
        };
        for s in Bits(comp & !(1 << i) & !(1 << t)) {
            if s > t {
                continue;
            }
            let vi = potential(s, i);
            for j in g.neighbor_iter(i) {
                total += (&vi - potential(s, j)).abs();
            }
        }
    }
    Ok(total * rat(1, 2))
}
