use crate::graph::{Bits, Graph};

/// Isolated vertices plus at most one component `C` on two or more vertices
/// with minimum degree 2 and diameter 2, where `i ≠ j` in `C` are adjacent
/// exactly when `N(i)∖{j}` and `N(j)∖{i}` are incomparable.
pub fn betweenness_condition(g: &Graph) -> bool {
    let big: Vec<u16> = g.components().into_iter().filter(|c| c.count_ones() >= 2).collect();
    let comp = match big.as_slice() {
        [] => return true,
        [c] => *c,
        _ => return false,
    };
    let verts: Vec<usize> = Bits(comp).collect();
    if verts.iter().any(|&v| g.degree(v) < 2) {
        return false;
    }
    let dist = g.distances();
    let diameter = verts.iter().flat_map(|&u| verts.iter().map(move |&v| (u, v))).filter_map(|(u, v)| dist.get(u, v).finite()).max();
    if diameter != Some(2) {
        return false;
    }
    verts.iter().enumerate().all(|(k, &i)| {
        verts[k + 1..].iter().all(|&j| {
            let a = g.neighbors(i) & !(1 << j);
            let b = g.neighbors(j) & !(1 << i);
            let comparable = a & !b == 0 || b & !a == 0;
            g.has_edge(i, j) == !comparable
        })
    })
}
