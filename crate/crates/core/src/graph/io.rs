//! Edge-list and graph6 codecs.
//!
//! Edge lists start with a header line `<n> <edge count>` followed by one
//! `u v` line per edge, `u < v`, 0-indexed. Blank lines and `#` comments are
//! ignored.

use std::collections::HashSet;

use thiserror::Error;

use super::{pair_count, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: pair {u} {v} must be written with the smaller vertex first")]
    DescendingPair { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("invalid graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ParseError {
    /// Stable identifier for machine-readable error reports.
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::Malformed { .. } => "parse_malformed",
            ParseError::VertexOutOfRange { .. } => "parse_vertex_out_of_range",
            ParseError::DuplicateEdge { .. } => "parse_duplicate_edge",
            ParseError::SelfLoop { .. } => "parse_self_loop",
            ParseError::DescendingPair { .. } => "parse_descending_pair",
            ParseError::EdgeCountMismatch { .. } => "parse_edge_count_mismatch",
            ParseError::Graph6(_) => "parse_graph6",
            ParseError::Graph(GraphError::TooManyVertices { .. }) => "size_guard",
            ParseError::Graph(_) => "invalid_graph",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

impl GraphFormat {
    /// Picks graph6 for `.g6`/`.graph6` paths, edge list otherwise.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") | Some("graph6") => GraphFormat::Graph6,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn read_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => read_edge_list(text),
        GraphFormat::Graph6 => read_graph6(text),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn two_numbers(line: usize, s: &str) -> Result<(usize, usize), ParseError> {
    let malformed = |reason: &str| ParseError::Malformed { line, reason: reason.to_string() };
    let mut it = s.split_whitespace();
    let a = it.next().ok_or_else(|| malformed("expected two integers"))?;
    let b = it.next().ok_or_else(|| malformed("expected two integers"))?;
    if it.next().is_some() {
        return Err(malformed("trailing tokens"));
    }
    let a = a.parse().map_err(|_| malformed(&format!("not a nonnegative integer: {a:?}")))?;
    let b = b.parse().map_err(|_| malformed(&format!("not a nonnegative integer: {b:?}")))?;
    Ok((a, b))
}

/// Full edge-list document with header.
pub fn read_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| ParseError::Malformed {
        line: 1,
        reason: "missing header `<n> <edge count>`".into(),
    })?;
    let (n, declared) = two_numbers(hline, header)?;
    let edges = parse_edges(n, lines)?;
    if edges.len() != declared {
        return Err(ParseError::EdgeCountMismatch { declared, found: edges.len() });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// Headerless `u v` lines for a graph on `n` vertices.
pub fn read_edges(n: usize, text: &str) -> Result<Graph, ParseError> {
    let edges = parse_edges(n, content_lines(text))?;
    Ok(Graph::from_edges(n, &edges)?)
}

fn parse_edges<'a>(
    n: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<(usize, usize)>, ParseError> {
    Graph::empty(n)?;
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (line, s) in lines {
        let (u, v) = two_numbers(line, s)?;
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if u > v {
            return Err(ParseError::DescendingPair { line, u, v });
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    Ok(edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + pair_count(n).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mask = g.pair_mask();
    let pairs = pair_count(n);
    let mut k = 0;
    while k < pairs {
        let mut group = 0u8;
        for b in 0..6 {
            group <<= 1;
            if k + b < pairs && mask >> (k + b) & 1 == 1 {
                group |= 1;
            }
        }
        out.push((group + 63) as char);
        k += 6;
    }
    out
}

pub fn read_graph6(text: &str) -> Result<Graph, ParseError> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Graph6("empty input".into()));
    }
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6("byte outside 63..=126".into()));
    }
    if bytes[0] == 126 {
        return Err(ParseError::Graph6("graphs with more than 62 vertices are not supported".into()));
    }
    let n = (bytes[0] - 63) as usize;
    let pairs = pair_count(n);
    let groups = pairs.div_ceil(6);
    if bytes.len() != 1 + groups {
        return Err(ParseError::Graph6(format!(
            "expected {} data bytes for n = {n}, found {}",
            groups,
            bytes.len() - 1
        )));
    }
    if n > super::MAX_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: super::MAX_VERTICES }.into());
    }
    let mut mask = 0u128;
    for (gi, &byte) in bytes[1..].iter().enumerate() {
        let group = byte - 63;
        for b in 0..6 {
            let k = gi * 6 + b;
            if group >> (5 - b) & 1 == 1 {
                if k >= pairs {
                    return Err(ParseError::Graph6("nonzero padding bits".into()));
                }
                mask |= 1 << k;
            }
        }
    }
    Ok(Graph::from_pair_mask(n, mask)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn headerless_path() {
        let g = read_edges(3, "0 1\n1 2").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "5 3\n0 4\n1 2\n2 3\n";
        let g = read_edge_list(text).unwrap();
        assert_eq!(write_edge_list(&g), text);
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = read_edge_list("# triangle\n3 3\n\n0 1\n0 2 # spoke\n1 2\n").unwrap();
        assert!(g.is_complete());
    }

    #[test]
    fn distinct_parse_errors() {
        assert!(matches!(read_edge_list("3 1\n0 x\n"), Err(ParseError::Malformed { line: 2, .. })));
        assert!(matches!(read_edge_list("3 1\n0 3\n"), Err(ParseError::VertexOutOfRange { vertex: 3, .. })));
        assert!(matches!(read_edge_list("3 2\n0 1\n0 1\n"), Err(ParseError::DuplicateEdge { line: 3, .. })));
        assert!(matches!(read_edge_list("3 1\n1 1\n"), Err(ParseError::SelfLoop { vertex: 1, .. })));
        assert!(matches!(read_edge_list("3 1\n2 1\n"), Err(ParseError::DescendingPair { .. })));
        assert!(matches!(read_edge_list("3 2\n0 1\n"), Err(ParseError::EdgeCountMismatch { .. })));
        assert!(matches!(read_edge_list(""), Err(ParseError::Malformed { .. })));
        assert!(matches!(read_edge_list("17 0\n"), Err(ParseError::Graph(GraphError::TooManyVertices { .. }))));
    }

    #[test]
    fn graph6_known_strings() {
        // K3: n=3 -> 'B', bits 111 padded -> 111000 = 56 -> 'w'.
        assert_eq!(write_graph6(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(read_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        // P3 with edges 0-1, 1-2: bits x01=1, x02=0, x12=1 -> 101000 = 40 -> 'g'.
        assert_eq!(write_graph6(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(write_graph6(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(write_graph6(&Graph::complete(5).unwrap()), "D~{");
    }

    #[test]
    fn graph6_round_trip_all_n5() {
        for m in 0..1024u128 {
            let g = Graph::from_pair_mask(5, m).unwrap();
            assert_eq!(read_graph6(&write_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn graph6_rejects_bad_input() {
        assert!(read_graph6("").is_err());
        assert!(read_graph6("B").is_err());
        assert!(read_graph6("Bx").is_err());
        assert!(read_graph6("B\u{7f}").is_err());
        assert_eq!(read_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3).unwrap());
    }
}
