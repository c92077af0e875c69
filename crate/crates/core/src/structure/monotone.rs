//! Stable networks for mixtures of the four monotone agent types.
//!
//! The exact conditions, read off the willingness rules of each type:
//! - a `1p` vertex is isolated;
//! - two `1`/`2` vertices in the same component are adjacent;
//! - every `1` and `2p` vertex lies in one component;
//! - an edge at a `2` vertex is not a bridge;
//! - an edge at a `2p` vertex is a bridge.
//!
//! So there is at most one complex component: a clique core of `1`/`2`
//! vertices with trees of `2p` vertices hanging off `1` vertices. Every other
//! component is a `2` clique of size 1 or at least 3.

use super::StructureError;
use crate::game::MonotoneType::{self, One, OnePrime, Two, TwoPrime};
use crate::graph::{Bits, Graph};

/// Possible types for each vertex, in the order of [`MonotoneType::ALL`].
pub type TypeCandidates = Vec<Vec<MonotoneType>>;

pub fn check_monotone_structure(g: &Graph, types: &[MonotoneType]) -> bool {
    if types.len() != g.n() {
        return false;
    }
    let n = g.n();
    if (0..n).any(|v| types[v] == OnePrime && !g.is_isolated(v)) {
        return false;
    }
    let core = |t: MonotoneType| matches!(t, One | Two);
    for u in 0..n {
        for v in u + 1..n {
            if core(types[u]) && core(types[v]) && g.same_component(u, v) && !g.has_edge(u, v) {
                return false;
            }
        }
    }
    let mut anchored = (0..n).filter(|&v| matches!(types[v], One | TwoPrime));
    if let Some(a) = anchored.next() {
        if !anchored.all(|v| g.same_component(a, v)) {
            return false;
        }
    }
    g.edges().into_iter().all(|(u, v)| {
        let bridge = g.is_bridge(u, v);
        let has = |t| types[u] == t || types[v] == t;
        !(has(Two) && bridge) && !(has(TwoPrime) && !bridge)
    })
}

/// Candidate sets of one component under one role.
type Local = Vec<(usize, Vec<MonotoneType>)>;

fn restrict(verts: &[usize], allowed: impl Fn(usize) -> Vec<MonotoneType>, known: &[Option<MonotoneType>]) -> Option<Local> {
    let mut out = Vec::with_capacity(verts.len());
    for &v in verts {
        let mut set = allowed(v);
        if let Some(t) = known[v] {
            set.retain(|&s| s == t);
        }
        if set.is_empty() {
            return None;
        }
        out.push((v, set));
    }
    Some(out)
}

/// The component holds only `1p`/`2` vertices.
fn plain_role(g: &Graph, verts: &[usize], known: &[Option<MonotoneType>]) -> Option<Local> {
    match verts.len() {
        1 => restrict(verts, |_| vec![OnePrime, Two], known),
        2 => None,
        _ if is_clique(g, verts) => restrict(verts, |_| vec![Two], known),
        _ => None,
    }
}

/// The component holds every `1` and `2p` vertex, and at least one of them.
fn anchor_role(g: &Graph, verts: &[usize], known: &[Option<MonotoneType>]) -> Option<Local> {
    if verts.len() == 1 {
        return restrict(verts, |_| vec![One, TwoPrime], known);
    }
    if verts.len() >= 3 && is_clique(g, verts) {
        // All of type 1 or 2, with at least one 1.
        let local = restrict(verts, |_| vec![One, Two], known)?;
        let can_be_one: Vec<usize> = local.iter().filter(|(_, s)| s.contains(&One)).map(|&(v, _)| v).collect();
        return match can_be_one.as_slice() {
            [] => None,
            [only] => Some(local.into_iter().map(|(v, s)| if v == *only { (v, vec![One]) } else { (v, s) }).collect()),
            _ => Some(local),
        };
    }
    let edges: Vec<(usize, usize)> = g.edges().into_iter().filter(|&(u, _)| verts.contains(&u)).collect();
    let on_cycle: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&v| edges.iter().any(|&(a, b)| (a == v || b == v) && !g.is_bridge(a, b)))
        .collect();
    if on_cycle.is_empty() {
        // A tree: types 1 and 2p, with the 1 vertices pairwise adjacent.
        let local = restrict(verts, |_| vec![One, TwoPrime], known)?;
        let forced: Vec<usize> = local.iter().filter(|(_, s)| s == &[One]).map(|&(v, _)| v).collect();
        if !pairwise_adjacent(g, &forced) {
            return None;
        }
        return Some(
            local
                .into_iter()
                .map(|(v, mut s)| {
                    let mut with_v = forced.clone();
                    if !with_v.contains(&v) {
                        with_v.push(v);
                    }
                    if !pairwise_adjacent(g, &with_v) {
                        s.retain(|&t| t != One);
                    }
                    (v, s)
                })
                .filter(|(_, s)| !s.is_empty())
                .collect::<Vec<_>>(),
        )
        .filter(|l: &Local| l.len() == verts.len());
    }
    // A clique core carrying every cycle, with 2p trees attached to 1 vertices.
    if on_cycle.len() < 3 || !is_clique(g, &on_cycle) {
        return None;
    }
    let core = bits(&on_cycle);
    restrict(
        verts,
        |v| {
            if core & (1 << v) == 0 {
                vec![TwoPrime]
            } else if g.neighbors(v) & !core != 0 {
                vec![One]
            } else {
                vec![One, Two]
            }
        },
        known,
    )
}

fn bits(verts: &[usize]) -> u16 {
    verts.iter().fold(0, |m, &v| m | 1 << v)
}

fn is_clique(g: &Graph, verts: &[usize]) -> bool {
    g.is_clique(bits(verts))
}

fn pairwise_adjacent(g: &Graph, verts: &[usize]) -> bool {
    verts.iter().enumerate().all(|(k, &a)| verts[k + 1..].iter().all(|&b| g.has_edge(a, b)))
}

fn merge(into: &mut [Vec<MonotoneType>], local: &Local) {
    for (v, set) in local {
        for &t in set {
            if !into[*v].contains(&t) {
                into[*v].push(t);
            }
        }
    }
}

/// Every type each vertex can have in some assignment that makes `g` stable,
/// optionally conditioned on types known in advance.
pub fn infer_types(g: &Graph, known: Option<&[Option<MonotoneType>]>) -> Result<TypeCandidates, StructureError> {
    let n = g.n();
    let none = vec![None; n];
    let known = match known {
        Some(k) if k.len() != n => return Err(StructureError::TypeCount { got: k.len(), n }),
        Some(k) => k,
        None => &none,
    };
    let comps: Vec<Vec<usize>> = g.components().into_iter().map(|m| Bits(m).collect()).collect();
    let roles: Vec<(Option<Local>, Option<Local>)> =
        comps.iter().map(|c| (plain_role(g, c, known), anchor_role(g, c, known))).collect();
    let forced: Vec<usize> = (0..comps.len()).filter(|&c| roles[c].0.is_none()).collect();
    let mut out: TypeCandidates = vec![Vec::new(); n];
    match forced.as_slice() {
        [] => {
            for (plain, anchor) in &roles {
                merge(&mut out, plain.as_ref().expect("plain role feasible"));
                if let Some(a) = anchor {
                    merge(&mut out, a);
                }
            }
        }
        [c] => {
            let Some(anchor) = &roles[*c].1 else {
                return Err(StructureError::NotMonotoneShape);
            };
            merge(&mut out, anchor);
            for (k, (plain, _)) in roles.iter().enumerate() {
                if k != *c {
                    merge(&mut out, plain.as_ref().expect("only one forced component"));
                }
            }
        }
        _ => return Err(StructureError::NotMonotoneShape),
    }
    for set in &mut out {
        set.sort();
    }
    Ok(out)
}
