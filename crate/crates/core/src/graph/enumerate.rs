//! Exhaustive labeled enumeration in increasing pair-mask order.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Largest `n` accepted for full enumeration (`2^28` graphs).
pub const MAX_ENUMERATION_VERTICES: usize = 8;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A contiguous range of pair masks handled by one worker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shard {
    pub index: usize,
    pub start: u64,
    pub end: u64,
}

impl Shard {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// All `2^(n(n-1)/2)` labeled graphs on `n` vertices.
#[derive(Clone, Debug)]
pub struct LabeledGraphs {
    n: usize,
    total: u64,
}

pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs, GraphError> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(GraphError::TooManyVertices { n, max: MAX_ENUMERATION_VERTICES });
    }
    Graph::empty(n)?;
    Ok(LabeledGraphs { n, total: 1u64 << pair_count(n) })
}

impl LabeledGraphs {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Splits the mask range into `count` near-equal shards; earlier shards
    /// take the remainder. Empty shards are dropped.
    pub fn shards(&self, count: usize) -> Vec<Shard> {
        let count = count.max(1) as u64;
        let base = self.total / count;
        let extra = self.total % count;
        let mut out = Vec::new();
        let mut start = 0;
        for k in 0..count {
            let len = base + u64::from(k < extra);
            if len > 0 {
                out.push(Shard { index: out.len(), start, end: start + len });
            }
            start += len;
        }
        out
    }

    pub fn range(&self, range: Range<u64>) -> impl Iterator<Item = Graph> + '_ {
        let n = self.n;
        range.map(move |m| Graph::from_pair_mask(n, m as u128).expect("mask within range"))
    }

    pub fn shard(&self, shard: Shard) -> impl Iterator<Item = Graph> + '_ {
        self.range(shard.start..shard.end)
    }

    pub fn iter(&self) -> impl Iterator<Item = Graph> + '_ {
        self.range(0..self.total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(enumerate_labeled_graphs(1).unwrap().iter().count(), 1);
        assert_eq!(enumerate_labeled_graphs(2).unwrap().iter().count(), 2);
        assert_eq!(enumerate_labeled_graphs(4).unwrap().iter().count(), 64);
        assert_eq!(enumerate_labeled_graphs(6).unwrap().iter().count(), 32768);
    }

    #[test]
    fn masks_are_distinct_and_increasing() {
        let all: Vec<_> = enumerate_labeled_graphs(5).unwrap().iter().map(|g| g.pair_mask()).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 1024);
    }

    #[test]
    fn shards_partition_the_range() {
        let e = enumerate_labeled_graphs(5).unwrap();
        for count in [1, 3, 7, 8, 2000] {
            let shards = e.shards(count);
            assert_eq!(shards[0].start, 0);
            assert_eq!(shards.last().unwrap().end, 1024);
            assert!(shards.windows(2).all(|w| w[0].end == w[1].start));
            let seen: u64 = shards.iter().map(Shard::len).sum();
            assert_eq!(seen, 1024);
        }
    }

    #[test]
    fn guard() {
        assert!(matches!(enumerate_labeled_graphs(9), Err(GraphError::TooManyVertices { n: 9, max: 8 })));
        assert!(enumerate_labeled_graphs(0).is_err());
    }
}
