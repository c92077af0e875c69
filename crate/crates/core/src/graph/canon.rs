//! Canonical forms by exhaustive permutation search.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{write_graph6, Graph, GraphError};

pub const MAX_CANONICAL_VERTICES: usize = 10;

/// Minimum pair mask over all relabelings. Equal forms ⟺ isomorphic graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub n: usize,
    pub mask: u128,
}

impl CanonicalForm {
    /// The canonical representative itself.
    pub fn graph(&self) -> Graph {
        Graph::from_pair_mask(self.n, self.mask).expect("canonical mask is valid")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(&self.graph()))
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, GraphError> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: MAX_CANONICAL_VERTICES });
    }
    // p[a] is the original vertex placed at position a; the candidate graph has
    // pair (a,b) iff g has (p[a], p[b]).
    let mut p: Vec<usize> = (0..n).collect();
    let mut best = g.pair_mask();
    let mut c = vec![0usize; n];
    let mut k = 1;
    while k < n {
        if c[k] < k {
            if k % 2 == 0 {
                p.swap(0, k);
            } else {
                p.swap(c[k], k);
            }
            if let Some(m) = permuted_mask_below(g, &p, best) {
                best = m;
            }
            c[k] += 1;
            k = 1;
        } else {
            c[k] = 0;
            k += 1;
        }
    }
    Ok(CanonicalForm { n, mask: best })
}

/// Mask of `g` under `p` if it is strictly below `bound`, computed from the most
/// significant pair down so larger candidates abort early.
fn permuted_mask_below(g: &Graph, p: &[usize], bound: u128) -> Option<u128> {
    let n = p.len();
    let mut k = n * (n - 1) / 2;
    for j in (1..n).rev() {
        let row = g.neighbors(p[j]);
        for i in (0..j).rev() {
            k -= 1;
            let bit = row >> p[i] & 1 == 1;
            let bound_bit = bound >> k & 1 == 1;
            if bit != bound_bit {
                if bit {
                    return None;
                }
                return Some(permuted_mask(g, p));
            }
        }
    }
    None
}

fn permuted_mask(g: &Graph, p: &[usize]) -> u128 {
    let mut mask = 0u128;
    let mut k = 0;
    for j in 1..p.len() {
        let row = g.neighbors(p[j]);
        for &pi in &p[..j] {
            if row >> pi & 1 == 1 {
                mask |= 1 << k;
            }
            k += 1;
        }
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn brute(g: &Graph) -> u128 {
        fn rec(g: &Graph, used: &mut Vec<bool>, perm: &mut Vec<usize>, best: &mut u128) {
            if perm.len() == g.n() {
                *best = (*best).min(g.relabel(perm).pair_mask());
                return;
            }
            for v in 0..g.n() {
                if !used[v] {
                    used[v] = true;
                    perm.push(v);
                    rec(g, used, perm, best);
                    perm.pop();
                    used[v] = false;
                }
            }
        }
        let mut best = u128::MAX;
        rec(g, &mut vec![false; g.n()], &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn matches_brute_force_minimum() {
        for m in 0..1024u128 {
            let g = Graph::from_pair_mask(5, m).unwrap();
            assert_eq!(canonical_form(&g).unwrap().mask, brute(&g), "mask {m}");
        }
    }

    #[test]
    fn p3_labelings_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let k3 = Graph::complete(3).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&k3).unwrap());
    }

    #[test]
    fn random_relabelings_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (2, 7), (7, 4)]).unwrap();
        let base = canonical_form(&g).unwrap();
        let mut perm: Vec<usize> = (0..8).collect();
        for _ in 0..10 {
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&g.relabel(&perm)).unwrap(), base);
        }
    }

    #[test]
    fn size_guard() {
        let g = Graph::empty(11).unwrap();
        assert!(matches!(canonical_form(&g), Err(GraphError::TooManyVertices { max: 10, .. })));
        assert!(canonical_form(&Graph::empty(10).unwrap()).is_ok());
    }
}
