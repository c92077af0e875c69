//! Exhaustive stability census over all labeled graphs on `n` vertices.
//!
//! Work is split into shards of consecutive pair masks. Each finished shard can
//! be appended to a JSON-lines checkpoint file and skipped when resuming.

use std::collections::{BTreeMap, HashSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::centrality::Measure;
use crate::game::{apsn_verdict, is_apsn, FlipRecord, GameError, GameSpec, Verdict};
use crate::graph::{canonical_form, enumerate_labeled_graphs, write_graph6, Graph, GraphError, Shard};

pub const MAX_CENSUS_VERTICES: usize = 7;
pub const MAX_RANDOM_WALK_VERTICES: usize = 6;
pub const MAX_SPECTRAL_VERTICES: usize = 5;
pub const MAX_CONJECTURE_VERTICES: usize = 5;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("census on {n} vertices exceeds the limit of {max} for {reason}")]
    Size { n: usize, max: usize, reason: &'static str },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error("conjecture reports cover rwbetweenness and eigenvector, not {0}")]
    NoConjecture(String),
}

impl CensusError {
    pub fn code(&self) -> &'static str {
        match self {
            CensusError::Size { .. } => "size_guard",
            CensusError::Game(e) => e.code(),
            CensusError::Graph(GraphError::TooManyVertices { .. }) => "size_guard",
            CensusError::Graph(_) => "invalid_graph",
            CensusError::Checkpoint { .. } => "checkpoint",
            CensusError::NoConjecture(_) => "unknown_measure",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub shards: usize,
    /// JSON-lines file receiving one record per finished shard.
    pub checkpoint: Option<PathBuf>,
    /// Skip shards already recorded in the checkpoint.
    pub resume: bool,
}

impl CensusOptions {
    pub fn with_shards(shards: usize) -> Self {
        Self { shards, ..Self::default() }
    }
}

/// One isomorphism class of graphs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphClass {
    /// graph6 of the canonical representative.
    pub graph6: String,
    pub edges: usize,
    /// Number of labeled graphs in the class that landed in this bucket.
    pub labeled: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub scanned: u64,
    pub stable: u64,
    pub unstable: u64,
    pub ambiguous: u64,
}

/// The deterministic part of a census result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub n: usize,
    pub fingerprint: String,
    pub apsn: Vec<GraphClass>,
    pub ambiguous: Vec<GraphClass>,
    pub counts: CensusCounts,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusResult {
    #[serde(flatten)]
    pub summary: CensusSummary,
    pub wall_time_ms: u128,
    pub shard_layout: Vec<Shard>,
    pub resumed_shards: usize,
}

impl CensusResult {
    /// Canonical representatives of the stable classes.
    pub fn apsn_graphs(&self) -> Vec<Graph> {
        self.summary.apsn.iter().map(|c| crate::graph::read_graph6(&c.graph6).expect("own output")).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ShardRecord {
    fingerprint: String,
    n: usize,
    shard: Shard,
    stable: Vec<u64>,
    ambiguous: Vec<u64>,
    unstable: u64,
}

/// Largest `n` the census accepts for this game.
pub fn size_limit(spec: &GameSpec) -> (usize, &'static str) {
    let measures: Vec<&Measure> = spec.agents().iter().filter_map(|a| a.measure()).collect();
    if measures.iter().any(|m| m.is_spectral()) {
        (MAX_SPECTRAL_VERTICES, "floating-point spectral measures")
    } else if measures.iter().any(|m| m.is_random_walk()) {
        (MAX_RANDOM_WALK_VERTICES, "random-walk measures")
    } else {
        (MAX_CENSUS_VERTICES, "exhaustive enumeration")
    }
}

fn guard(spec: &GameSpec, n: usize) -> Result<(), CensusError> {
    let (max, reason) = size_limit(spec);
    if n > max {
        return Err(CensusError::Size { n, max, reason });
    }
    spec.check_size(n)?;
    Ok(())
}

fn scan(spec: &GameSpec, n: usize, shard: Shard, fingerprint: &str) -> Result<ShardRecord, CensusError> {
    let mut rec = ShardRecord {
        fingerprint: fingerprint.to_string(),
        n,
        shard,
        stable: Vec::new(),
        ambiguous: Vec::new(),
        unstable: 0,
    };
    for mask in shard.start..shard.end {
        let g = Graph::from_pair_mask(n, mask as u128)?;
        match apsn_verdict(spec, &g)? {
            Verdict::Stable => rec.stable.push(mask),
            Verdict::Ambiguous => rec.ambiguous.push(mask),
            Verdict::Unstable => rec.unstable += 1,
        }
    }
    Ok(rec)
}

fn read_checkpoint(path: &Path, fingerprint: &str, n: usize) -> Result<Vec<ShardRecord>, CensusError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(CensusError::Checkpoint { path: path.to_path_buf(), reason: e.to_string() }),
    };
    let mut out = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| CensusError::Checkpoint { path: path.to_path_buf(), reason: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: ShardRecord = serde_json::from_str(&line).map_err(|e| CensusError::Checkpoint {
            path: path.to_path_buf(),
            reason: format!("line {}: {e}", k + 1),
        })?;
        if rec.fingerprint != fingerprint || rec.n != n {
            return Err(CensusError::Checkpoint {
                path: path.to_path_buf(),
                reason: "checkpoint belongs to a different game or vertex count".into(),
            });
        }
        out.push(rec);
    }
    Ok(out)
}

fn classes(n: usize, masks: impl Iterator<Item = u64>) -> Result<Vec<GraphClass>, CensusError> {
    let mut by_form: BTreeMap<(usize, u128), u64> = BTreeMap::new();
    for m in masks {
        let g = Graph::from_pair_mask(n, m as u128)?;
        let form = canonical_form(&g)?;
        *by_form.entry((g.edge_count(), form.mask)).or_default() += 1;
    }
    Ok(by_form
        .into_iter()
        .map(|((edges, mask), labeled)| GraphClass {
            graph6: write_graph6(&Graph::from_pair_mask(n, mask).expect("canonical mask")),
            edges,
            labeled,
        })
        .collect())
}

pub fn run_census(spec: &GameSpec, n: usize, options: &CensusOptions) -> Result<CensusResult, CensusError> {
    guard(spec, n)?;
    let started = Instant::now();
    let fingerprint = spec.fingerprint();
    let layout = enumerate_labeled_graphs(n)?.shards(options.shards.max(1));
    let mut done: Vec<ShardRecord> = Vec::new();
    if let (Some(path), true) = (&options.checkpoint, options.resume) {
        let layout_set: HashSet<(u64, u64)> = layout.iter().map(|s| (s.start, s.end)).collect();
        for rec in read_checkpoint(path, &fingerprint, n)? {
            if !layout_set.contains(&(rec.shard.start, rec.shard.end)) {
                return Err(CensusError::Checkpoint {
                    path: path.clone(),
                    reason: "shard layout differs from the checkpoint; rerun with the same --shards".into(),
                });
            }
            if !done.iter().any(|d| d.shard.start == rec.shard.start) {
                done.push(rec);
            }
        }
    }
    let resumed = done.len();
    let todo: Vec<Shard> =
        layout.iter().copied().filter(|s| !done.iter().any(|d| d.shard.start == s.start)).collect();
    let writer = match &options.checkpoint {
        Some(path) => {
            let file = OpenOptions::new()
                .create(true)
                .append(options.resume)
                .write(true)
                .truncate(!options.resume)
                .open(path)
                .map_err(|e| CensusError::Checkpoint { path: path.clone(), reason: e.to_string() })?;
            Some(Mutex::new(file))
        }
        None => None,
    };
    let fresh: Vec<ShardRecord> = todo
        .par_iter()
        .map(|&shard| {
            let rec = scan(spec, n, shard, &fingerprint)?;
            if let (Some(w), Some(path)) = (&writer, &options.checkpoint) {
                let line = serde_json::to_string(&rec).expect("shard records serialize");
                let mut f = w.lock().unwrap();
                writeln!(f, "{line}")
                    .and_then(|_| f.flush())
                    .map_err(|e| CensusError::Checkpoint { path: path.clone(), reason: e.to_string() })?;
            }
            Ok(rec)
        })
        .collect::<Result<_, CensusError>>()?;
    done.extend(fresh);
    done.sort_by_key(|r| r.shard.start);

    let mut counts = CensusCounts::default();
    for r in &done {
        counts.scanned += r.shard.len();
        counts.stable += r.stable.len() as u64;
        counts.ambiguous += r.ambiguous.len() as u64;
        counts.unstable += r.unstable;
    }
    let apsn = classes(n, done.iter().flat_map(|r| r.stable.iter().copied()))?;
    let ambiguous = classes(n, done.iter().flat_map(|r| r.ambiguous.iter().copied()))?;
    Ok(CensusResult {
        summary: CensusSummary { n, fingerprint, apsn, ambiguous, counts },
        wall_time_ms: started.elapsed().as_millis(),
        shard_layout: layout,
        resumed_shards: resumed,
    })
}

/// Every labeled graph on `n` vertices that is stable for `spec`, in mask
/// order. Ambiguous graphs are excluded.
pub fn labeled_apsn(spec: &GameSpec, n: usize) -> Result<Vec<Graph>, CensusError> {
    guard(spec, n)?;
    let all = enumerate_labeled_graphs(n)?;
    let total = all.total();
    let found: Vec<Option<Graph>> = (0..total)
        .into_par_iter()
        .map(|m| {
            let g = Graph::from_pair_mask(n, m as u128)?;
            Ok(match apsn_verdict(spec, &g)? {
                Verdict::Stable => Some(g),
                _ => None,
            })
        })
        .collect::<Result<_, CensusError>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConjectureVerdict {
    /// Stable classes are exactly the conjectured ones.
    Consistent,
    /// Stable classes outside the conjectured set.
    Counterexample { graph6: Vec<String> },
    /// Conjectured graphs that are not stable (and not ambiguous).
    MissingMember { graph6: Vec<String> },
    /// Nothing contradicts the conjecture but some graphs are ambiguous.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmbiguousGraph {
    pub graph6: String,
    pub flips: Vec<FlipRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub measure: String,
    pub n: usize,
    pub conjectured: Vec<String>,
    pub census: CensusSummary,
    pub ambiguous_details: Vec<AmbiguousGraph>,
    pub verdict: ConjectureVerdict,
}

impl ConjectureReport {
    /// The verdict agrees with the census classes it summarizes.
    pub fn is_consistent(&self) -> bool {
        let found: HashSet<&str> = self.census.apsn.iter().map(|c| c.graph6.as_str()).collect();
        let amb: HashSet<&str> = self.census.ambiguous.iter().map(|c| c.graph6.as_str()).collect();
        let conj: HashSet<&str> = self.conjectured.iter().map(String::as_str).collect();
        let extra: Vec<&str> = found.difference(&conj).copied().collect();
        let missing: Vec<&str> = conj.iter().copied().filter(|c| !found.contains(c) && !amb.contains(c)).collect();
        let counts = &self.census.counts;
        let tallies = counts.stable + counts.unstable + counts.ambiguous == counts.scanned
            && self.census.apsn.iter().map(|c| c.labeled).sum::<u64>() == counts.stable
            && self.census.ambiguous.iter().map(|c| c.labeled).sum::<u64>() == counts.ambiguous
            && self.ambiguous_details.len() == self.census.ambiguous.len();
        let verdict_ok = match &self.verdict {
            ConjectureVerdict::Consistent => extra.is_empty() && missing.is_empty() && amb.is_empty(),
            ConjectureVerdict::Counterexample { graph6 } => {
                !extra.is_empty() && graph6.iter().all(|g| extra.contains(&g.as_str())) && graph6.len() == extra.len()
            }
            ConjectureVerdict::MissingMember { graph6 } => {
                extra.is_empty() && !missing.is_empty() && graph6.len() == missing.len()
            }
            ConjectureVerdict::Inconclusive => extra.is_empty() && missing.is_empty() && !amb.is_empty(),
        };
        tallies && verdict_ok
    }
}

/// Census for the two conjectured families: random-walk betweenness (`∅_n`
/// and `K_n`) and eigenvector centrality (`K_n` only).
pub fn conjecture_report(measure: &Measure, n: usize, shards: usize) -> Result<ConjectureReport, CensusError> {
    if n > MAX_CONJECTURE_VERTICES {
        return Err(CensusError::Size { n, max: MAX_CONJECTURE_VERTICES, reason: "conjecture reports" });
    }
    let conjectured_graphs = match measure {
        Measure::RwBetweenness => vec![Graph::empty(n)?, Graph::complete(n)?],
        Measure::Eigenvector => vec![Graph::complete(n)?],
        m => return Err(CensusError::NoConjecture(m.to_string())),
    };
    let mut conjectured: Vec<String> =
        conjectured_graphs.iter().map(|g| canonical_form(g).map(|c| c.to_string())).collect::<Result<_, _>>()?;
    conjectured.dedup();
    let spec = GameSpec::uniform(measure.clone(), n)?;
    let census = run_census(&spec, n, &CensusOptions::with_shards(shards))?.summary;
    let ambiguous_details = census
        .ambiguous
        .iter()
        .map(|c| {
            let g = crate::graph::read_graph6(&c.graph6).expect("own output");
            Ok(AmbiguousGraph { graph6: c.graph6.clone(), flips: is_apsn(&spec, &g)?.ambiguous_flips })
        })
        .collect::<Result<_, CensusError>>()?;
    let found: Vec<&str> = census.apsn.iter().map(|c| c.graph6.as_str()).collect();
    let amb: Vec<&str> = census.ambiguous.iter().map(|c| c.graph6.as_str()).collect();
    let extra: Vec<String> =
        found.iter().filter(|g| !conjectured.iter().any(|c| c == *g)).map(|g| g.to_string()).collect();
    let missing: Vec<String> = conjectured
        .iter()
        .filter(|c| !found.contains(&c.as_str()) && !amb.contains(&c.as_str()))
        .cloned()
        .collect();
    let verdict = if !extra.is_empty() {
        ConjectureVerdict::Counterexample { graph6: extra }
    } else if !missing.is_empty() {
        ConjectureVerdict::MissingMember { graph6: missing }
    } else if !amb.is_empty() {
        ConjectureVerdict::Inconclusive
    } else {
        ConjectureVerdict::Consistent
    };
    Ok(ConjectureReport { measure: measure.to_string(), n, conjectured, census, ambiguous_details, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decay_census_is_complete_graph() {
        let spec = GameSpec::uniform(Measure::decay(1, 2).unwrap(), 4).unwrap();
        let r = run_census(&spec, 4, &CensusOptions::with_shards(3)).unwrap();
        assert_eq!(r.apsn_graphs(), vec![Graph::complete(4).unwrap()]);
        assert_eq!(r.summary.counts.scanned, 64);
        assert_eq!(r.summary.counts.stable, 1);
    }

    #[test]
    fn shard_count_does_not_matter() {
        let spec = GameSpec::uniform(Measure::Betweenness, 5).unwrap();
        let a = run_census(&spec, 5, &CensusOptions::with_shards(1)).unwrap();
        let b = run_census(&spec, 5, &CensusOptions::with_shards(8)).unwrap();
        assert_eq!(a.summary, b.summary);
        assert_eq!(
            serde_json::to_string(&a.summary).unwrap(),
            serde_json::to_string(&b.summary).unwrap()
        );
    }

    #[test]
    fn size_guards() {
        let spec = GameSpec::uniform(Measure::Degree, 8).unwrap();
        assert!(matches!(run_census(&spec, 8, &CensusOptions::default()), Err(CensusError::Size { max: 7, .. })));
        let rw = GameSpec::uniform(Measure::RwCloseness, 7).unwrap();
        assert!(matches!(run_census(&rw, 7, &CensusOptions::default()), Err(CensusError::Size { max: 6, .. })));
        let eig = GameSpec::uniform(Measure::Eigenvector, 6).unwrap();
        assert!(matches!(run_census(&eig, 6, &CensusOptions::default()), Err(CensusError::Size { max: 5, .. })));
        assert!(matches!(conjecture_report(&Measure::Eigenvector, 6, 1), Err(CensusError::Size { .. })));
        assert!(matches!(conjecture_report(&Measure::Degree, 4, 1), Err(CensusError::NoConjecture(_))));
    }

    #[test]
    fn checkpoint_resume_reproduces_result() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ck.jsonl");
        let spec = GameSpec::uniform(Measure::Harmonic, 5).unwrap();
        let opts = CensusOptions { shards: 4, checkpoint: Some(path.clone()), resume: false };
        let full = run_census(&spec, 5, &opts).unwrap();
        // Drop the last two records, as if the run had been interrupted.
        let text = std::fs::read_to_string(&path).unwrap();
        let kept: Vec<&str> = text.lines().take(2).collect();
        std::fs::write(&path, kept.join("\n") + "\n").unwrap();
        let resumed = run_census(&spec, 5, &CensusOptions { resume: true, ..opts.clone() }).unwrap();
        assert_eq!(resumed.resumed_shards, 2);
        assert_eq!(resumed.summary, full.summary);
        assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 4);
        // A different game refuses the checkpoint.
        let other = GameSpec::uniform(Measure::Degree, 5).unwrap();
        assert!(matches!(
            run_census(&other, 5, &CensusOptions { resume: true, ..opts }),
            Err(CensusError::Checkpoint { .. })
        ));
    }

    #[test]
    fn labeled_set_matches_census_counts() {
        let spec = GameSpec::uniform(Measure::Closeness, 4).unwrap();
        let labeled = labeled_apsn(&spec, 4).unwrap();
        let r = run_census(&spec, 4, &CensusOptions::with_shards(2)).unwrap();
        assert_eq!(labeled.len() as u64, r.summary.counts.stable);
    }
}
