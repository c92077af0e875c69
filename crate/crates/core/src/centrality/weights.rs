//! Symmetric nonnegative integer weights for linear centralities.

use std::collections::HashSet;

use serde::Serialize;

use super::CentralityError;
use crate::graph::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    n: usize,
    w: Vec<u64>,
    /// Where the table was loaded from, used when printing the measure.
    #[serde(skip)]
    pub source: Option<String>,
}

impl WeightTable {
    pub fn zeros(n: usize) -> Self {
        Self { n, w: vec![0; n * n], source: None }
    }

    /// All off-diagonal weights equal to 1: linear centrality becomes degree.
    pub fn unit(n: usize) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    t.w[i * n + j] = 1;
                }
            }
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.w[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: u64) -> Result<(), CentralityError> {
        if i >= self.n || j >= self.n {
            return Err(CentralityError::Weights(format!("pair {i} {j} out of range for n = {}", self.n)));
        }
        if i == j {
            return Err(CentralityError::Weights(format!("diagonal weight at {i}")));
        }
        self.w[i * self.n + j] = w;
        self.w[j * self.n + i] = w;
        Ok(())
    }

    /// `Σ_k w_ik`, the largest value of `C_w[i]`.
    pub fn row_sum(&self, i: usize) -> u64 {
        (0..self.n).map(|k| self.get(i, k)).sum()
    }

    pub fn all_off_diagonal_positive(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) > 0))
    }

    /// Parses `n` on the first line, then `i j w` lines. Unlisted pairs weigh 0.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let malformed = |line: usize, reason: String| ParseError::Malformed { line, reason };
        let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing vertex count".into()))?;
        let n: usize = header.parse().map_err(|_| malformed(hline, format!("bad vertex count {header:?}")))?;
        let mut table = Self::zeros(n);
        let mut seen = HashSet::new();
        for (line, s) in lines {
            let parts: Vec<&str> = s.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(malformed(line, "expected `i j w`".into()));
            }
            let num = |t: &str| -> Result<u64, ParseError> {
                t.parse().map_err(|_| malformed(line, format!("not a nonnegative integer: {t:?}")))
            };
            let (i, j, w) = (num(parts[0])? as usize, num(parts[1])? as usize, num(parts[2])?);
            for vertex in [i, j] {
                if vertex >= n {
                    return Err(ParseError::VertexOutOfRange { line, vertex, n });
                }
            }
            if i == j {
                return Err(ParseError::SelfLoop { line, vertex: i });
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(ParseError::DuplicateEdge { line, u: i.min(j), v: i.max(j) });
            }
            table.w[i * n + j] = w;
            table.w[j * n + i] = w;
        }
        Ok(table)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) != 0 {
                    out.push_str(&format!("{i} {j} {}\n", self.get(i, j)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_round_trip() {
        let t = WeightTable::parse("3\n0 1 2\n2 1 5\n").unwrap();
        assert_eq!(t.get(1, 0), 2);
        assert_eq!(t.get(1, 2), 5);
        assert_eq!(t.get(0, 2), 0);
        assert_eq!(t.row_sum(1), 7);
        assert_eq!(WeightTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(WeightTable::parse("3\n0 1\n"), Err(ParseError::Malformed { .. })));
        assert!(matches!(WeightTable::parse("3\n0 1 -1\n"), Err(ParseError::Malformed { .. })));
        assert!(matches!(WeightTable::parse("3\n0 3 1\n"), Err(ParseError::VertexOutOfRange { .. })));
        assert!(matches!(WeightTable::parse("3\n1 1 1\n"), Err(ParseError::SelfLoop { .. })));
        assert!(matches!(WeightTable::parse("3\n0 1 1\n1 0 2\n"), Err(ParseError::DuplicateEdge { .. })));
    }

    #[test]
    fn unit_is_positive() {
        assert!(WeightTable::unit(4).all_off_diagonal_positive());
        assert!(!WeightTable::zeros(2).all_off_diagonal_positive());
    }
}
