use crate::graph::{Bits, Graph};

/// Smallest classical eccentricity of a connected graph.
pub fn radius(g: &Graph) -> Option<u32> {
    g.is_connected().then(|| g.vertices().map(|v| g.eccentricity(v)).min().unwrap_or(0))
}

/// No pendant vertex in a component of three or more vertices.
pub fn ecc_necessary(g: &Graph) -> bool {
    g.components()
        .into_iter()
        .filter(|c| c.count_ones() >= 3)
        .all(|c| Bits(c).all(|v| g.degree(v) != 1))
}

/// Connected, radius 1, minimum degree 2, and at least two vertices of
/// degree at most `n − 2`.
pub fn ecc_sufficient(g: &Graph) -> bool {
    let n = g.n();
    radius(g) == Some(1)
        && g.vertices().all(|v| g.degree(v) >= 2)
        && g.vertices().filter(|&v| g.degree(v) + 2 <= n).count() >= 2
}
