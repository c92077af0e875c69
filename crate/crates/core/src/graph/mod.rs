//! Small undirected simple graphs stored as per-vertex neighbor bitsets.
//!
//! Vertices are `0..n`. Unordered pairs are indexed in the column order used by
//! graph6: `(0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ...`, so pair `(i, j)` with
//! `i < j` has index `j*(j-1)/2 + i`. Enumeration, canonical forms and the
//! graph6 codec all share that order.

mod canon;
mod enumerate;
mod io;

pub use canon::{canonical_form, CanonicalForm, MAX_CANONICAL_VERTICES};
pub use enumerate::{enumerate_labeled_graphs, pair_count, LabeledGraphs, Shard, MAX_ENUMERATION_VERTICES};
pub use io::{
    read_edge_list, read_edges, read_graph, read_graph6, write_edge_list, write_graph6, GraphFormat,
    ParseError,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("{n} vertices exceeds the limit of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("domination is undefined for a vertex and itself ({0})")]
    SameVertex(usize),
    #[error("pair mask {mask:#x} has bits beyond the {pairs} pairs of a {n}-vertex graph")]
    MaskOutOfRange { mask: u128, n: usize, pairs: usize },
}

/// Index of the unordered pair `{i, j}` in graph6 column order.
#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(k: usize) -> (usize, usize) {
    let mut j = 1;
    while (j + 1) * j / 2 <= k {
        j += 1;
    }
    (k - j * (j - 1) / 2, j)
}

/// Iterator over the set bits of a vertex bitset.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u16);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// An undirected simple graph on `1..=16` labeled vertices.
///
/// Values are immutable; the edge-flip helpers return new graphs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    rows: [u16; MAX_VERTICES],
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        check_size(n)?;
        Ok(Self { n: n as u8, rows: [0; MAX_VERTICES] })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        let all = full_mask(n);
        for i in 0..n {
            g.rows[i] = all & !(1 << i);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Self::path(n);
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in a..a + b {
                edges.push((i, j));
            }
        }
        Self::from_edges(a + b, &edges)
    }

    /// Builds a graph from an edge list. Duplicate edges are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from a pair bitmask (bit `k` is the pair with [`pair_index`] `k`).
    pub fn from_pair_mask(n: usize, mask: u128) -> Result<Self, GraphError> {
        check_size(n)?;
        let pairs = n * (n - 1) / 2;
        if pairs < 128 && mask >> pairs != 0 {
            return Err(GraphError::MaskOutOfRange { mask, n, pairs });
        }
        let mut g = Self { n: n as u8, rows: [0; MAX_VERTICES] };
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    g.rows[i] |= 1 << j;
                    g.rows[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Ok(g)
    }

    pub fn pair_mask(&self) -> u128 {
        let mut mask = 0u128;
        let mut k = 0;
        for j in 1..self.n() {
            let row = self.rows[j];
            for i in 0..j {
                if row >> i & 1 == 1 {
                    mask |= 1 << k;
                }
                k += 1;
            }
        }
        mask
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Bitset with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u16 {
        full_mask(self.n())
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Neighbor bitset `N(i)`.
    #[inline]
    pub fn neighbors(&self, i: usize) -> u16 {
        self.rows[i]
    }

    /// Closed neighborhood `N(i) ∪ {i}`.
    #[inline]
    pub fn closed_neighbors(&self, i: usize) -> u16 {
        self.rows[i] | 1 << i
    }

    pub fn neighbor_iter(&self, i: usize) -> Bits {
        Bits(self.rows[i])
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.vertices().map(|i| self.degree(i)).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.n()].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in self.vertices() {
            for j in Bits(self.rows[i] & !((2u32 << i) - 1) as u16) {
                out.push((i, j));
            }
        }
        out
    }

    /// Missing pairs `(i, j)` with `i < j`, sorted lexicographically.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.vertices() {
            for j in i + 1..self.n() {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.rows[i] == 0
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n() * (self.n() - 1) / 2
    }

    /// Returns `g + ij`. Adding an existing edge is a no-op.
    pub fn with_edge(&self, i: usize, j: usize) -> Self {
        debug_assert!(i != j && i < self.n() && j < self.n());
        let mut g = *self;
        g.rows[i] |= 1 << j;
        g.rows[j] |= 1 << i;
        g
    }

    /// Returns `g - ij`.
    pub fn without_edge(&self, i: usize, j: usize) -> Self {
        let mut g = *self;
        g.rows[i] &= !(1 << j);
        g.rows[j] &= !(1 << i);
        g
    }

    /// Edge flip of the pair `{i, j}`.
    pub fn flipped(&self, i: usize, j: usize) -> Self {
        if self.has_edge(i, j) {
            self.without_edge(i, j)
        } else {
            self.with_edge(i, j)
        }
    }

    /// Bitset of the connected component of `i`.
    pub fn component_of(&self, i: usize) -> u16 {
        let mut seen = 1u16 << i;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// Components as bitsets, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u16> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let c = self.component_of(v);
            left &= !c;
            out.push(c);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn same_component(&self, i: usize, j: usize) -> bool {
        self.component_of(i) >> j & 1 == 1
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    /// Whether every pair inside the vertex bitset `set` is adjacent.
    pub fn is_clique(&self, set: u16) -> bool {
        Bits(set).all(|v| self.rows[v] & set == set & !(1 << v))
    }

    /// Bridge test for a present edge, or bridge-addition test for a missing one.
    ///
    /// For `ij` in the graph: removing it disconnects `i` from `j`. For `ij` not
    /// in the graph: `i` and `j` lie in different components.
    pub fn is_bridge(&self, i: usize, j: usize) -> bool {
        if self.has_edge(i, j) {
            !self.without_edge(i, j).same_component(i, j)
        } else {
            !self.same_component(i, j)
        }
    }

    /// Vicinal preorder: `y` dominates `x` iff `N(x) ⊆ N(y) ∪ {y}`.
    pub fn dominates(&self, y: usize, x: usize) -> Result<bool, GraphError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(GraphError::SameVertex(x));
        }
        Ok(self.rows[x] & !self.closed_neighbors(y) == 0)
    }

    /// All-pairs shortest-path distances by BFS from every vertex.
    pub fn distances(&self) -> DistanceMatrix {
        let n = self.n();
        let mut d = vec![Distance::Infinite; n * n];
        for s in 0..n {
            for (t, dist) in self.bfs_levels(s).into_iter().enumerate() {
                d[s * n + t] = dist;
            }
        }
        DistanceMatrix { n, d }
    }

    /// Distances from `s` to every vertex.
    pub fn bfs_levels(&self, s: usize) -> Vec<Distance> {
        let mut out = vec![Distance::Infinite; self.n()];
        let mut seen = 1u16 << s;
        let mut frontier = seen;
        let mut level = 0;
        while frontier != 0 {
            for v in Bits(frontier) {
                out[v] = Distance::Finite(level);
            }
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
            level += 1;
        }
        out
    }

    /// BFS distances and shortest-path counts from `s`; unreachable vertices
    /// get `Infinite` and count 0.
    pub fn path_counts(&self, s: usize) -> (Vec<Distance>, Vec<u64>) {
        let n = self.n();
        let mut dist = vec![Distance::Infinite; n];
        let mut sigma = vec![0u64; n];
        dist[s] = Distance::Finite(0);
        sigma[s] = 1;
        let mut seen = 1u16 << s;
        let mut frontier = seen;
        let mut level = 0;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.rows[v];
            }
            next &= !seen;
            level += 1;
            for w in Bits(next) {
                dist[w] = Distance::Finite(level);
                sigma[w] = Bits(self.rows[w] & frontier).map(|v| sigma[v]).sum();
            }
            seen |= next;
            frontier = next;
        }
        (dist, sigma)
    }

    /// Largest finite distance from `i` within its component (0 when isolated).
    pub fn eccentricity(&self, i: usize) -> u32 {
        self.bfs_levels(i).into_iter().filter_map(Distance::finite).max().unwrap_or(0)
    }

    /// Diameter of a connected graph, `None` when disconnected.
    pub fn diameter(&self) -> Option<u32> {
        if !self.is_connected() {
            return None;
        }
        self.vertices().map(|i| self.eccentricity(i)).max()
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n());
        let mut g = Self { n: self.n, rows: [0; MAX_VERTICES] };
        for v in self.vertices() {
            let mut row = 0u16;
            for w in Bits(self.rows[v]) {
                row |= 1 << perm[w];
            }
            g.rows[perm[v]] = row;
        }
        g
    }

    /// Disjoint union `self + other`; `other`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self, GraphError> {
        let n = self.n() + other.n();
        check_size(n)?;
        let mut g = Self { n: n as u8, rows: [0; MAX_VERTICES] };
        g.rows[..self.n()].copy_from_slice(&self.rows[..self.n()]);
        for v in other.vertices() {
            g.rows[self.n() + v] = other.rows[v] << self.n();
        }
        Ok(g)
    }

    /// Adds `k` isolated vertices.
    pub fn with_isolated(&self, k: usize) -> Result<Self, GraphError> {
        let n = self.n() + k;
        check_size(n)?;
        Ok(Self { n: n as u8, rows: self.rows })
    }

    /// Whether the graph contains a triangle through `a`, `b`, `c`.
    pub fn has_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(a, c)
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.n();
        let mut side = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for w in self.neighbor_iter(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph6(self))
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&write_graph6(self))
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        read_graph6(&s).map_err(serde::de::Error::custom)
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

fn check_size(n: usize) -> Result<(), GraphError> {
    if n == 0 {
        Err(GraphError::NoVertices)
    } else if n > MAX_VERTICES {
        Err(GraphError::TooManyVertices { n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

/// Shortest-path distance; `Infinite` marks vertices in different components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.d[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Distance] {
        &self.d[i * self.n..(i + 1) * self.n]
    }
}
