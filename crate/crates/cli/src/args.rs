use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "apsn", version, about = "Network formation games with centrality-maximizing agents")]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Cap on worker threads for parallel scans.
    #[arg(long, global = true, value_name = "N", value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Centrality of every vertex (or one vertex) of a graph.
    Centrality(CentralityArgs),
    /// Asymptotic pairwise stability of a graph under an agent profile.
    Check(CheckArgs),
    /// Exhaustive stability census over all graphs on n vertices.
    Census(CensusArgs),
    /// Search small graphs for a counterexample to a centrality axiom.
    Axiom(AxiomArgs),
    /// Stable sets predicted by the structural characterizations, or the
    /// structural reading of a single graph.
    Predict(PredictArgs),
    /// Truncated-centrality constructions.
    Truncated(TruncatedArgs),
    /// Recover hidden thresholds from a stability oracle.
    Learn(LearnArgs),
    /// Improving-flip dynamics from a start graph.
    Dynamics(DynamicsArgs),
    /// Graphviz DOT with per-vertex agent and centrality annotations.
    ExportDot(ExportDotArgs),
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    /// Graph file: edge list, or graph6 for `.g6` paths.
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Measure, e.g. `closeness`, `decay:1/2`, `linear:weights.txt`.
    #[arg(long, value_name = "SPEC")]
    pub measure: String,
    /// Report only this vertex.
    #[arg(long, value_name = "I")]
    pub vertex: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Agent profile JSON.
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,
    /// Also test pairwise stability at this fixed edge cost `p/q`.
    #[arg(long, value_name = "P/Q")]
    pub cost: Option<String>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("game").required(true).args(["profile", "conjecture"])))]
pub struct CensusArgs {
    #[arg(long, value_name = "N")]
    pub n: usize,
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
    /// Test a conjectured family instead: `rwbetweenness` or `eigenvector`.
    #[arg(long, value_name = "MEASURE")]
    pub conjecture: Option<String>,
    #[arg(long, value_name = "N", default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub shards: u32,
    /// Append one JSON line per finished shard to this file.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["resume", "conjecture"])]
    pub checkpoint: Option<PathBuf>,
    /// Continue from an existing checkpoint file, skipping finished shards.
    #[arg(long, value_name = "FILE", conflicts_with = "conjecture")]
    pub resume: Option<PathBuf>,
    /// Write the stable classes as a graph6 list.
    #[arg(long, value_name = "FILE")]
    pub graph6_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AxiomArgs {
    #[arg(long, value_name = "SPEC")]
    pub measure: String,
    /// One of 1, 1p, 2, 2p, 3, 4.
    #[arg(long, value_name = "A")]
    pub axiom: String,
    #[arg(long, value_name = "N", default_value_t = 5)]
    pub max_n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Monotone,
    Stratified,
    Betweenness,
    Eccentricity,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("target").required(true).args(["family", "graph"])))]
pub struct PredictArgs {
    /// Predict the stable set of a whole family on `--n` vertices.
    #[arg(long, value_enum, requires = "n")]
    pub family: Option<Family>,
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Per-vertex monotone types for `--family monotone`, e.g. `1,2,2,2p`.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub types: Vec<String>,
    /// Homophily `f` for `--family stratified`: `gt` or a table `f(0),f(1),...`.
    #[arg(long, value_name = "F", default_value = "gt", allow_hyphen_values = true)]
    pub homophily: String,
    /// Compare the prediction against an exhaustive census.
    #[arg(long)]
    pub verify: bool,
    /// Describe one graph: type candidates and structural conditions.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["family", "types", "verify"])]
    pub graph: Option<PathBuf>,
    /// Known types for `--graph`, e.g. `0=1,5=2p`.
    #[arg(long, value_name = "LIST", value_delimiter = ',', requires = "graph")]
    pub known: Vec<String>,
}

#[derive(Debug, Args)]
pub struct TruncatedArgs {
    #[command(subcommand)]
    pub action: TruncatedAction,
}

#[derive(Debug, Subcommand)]
pub enum TruncatedAction {
    /// Thresholds at the graph's own centralities, making it stable.
    Universality {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        #[arg(long, value_name = "SPEC")]
        measure: String,
    },
    /// Pareto condition of a graph under a thresholded profile.
    Pareto {
        #[arg(long, value_name = "FILE")]
        graph: PathBuf,
        /// Profile whose entries all carry thresholds.
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
    },
    /// Greedy stable graph for linear centralities.
    Greedy {
        /// Weight table: `n`, then `i j w` lines.
        #[arg(long, value_name = "FILE")]
        weights: PathBuf,
        /// Thresholds, one per vertex or a single shared value.
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        thresholds: Vec<String>,
    },
    /// Edge-maximal graph under the derived centrality bounds.
    Maximal {
        #[arg(long, value_name = "N")]
        n: usize,
        #[arg(long, value_name = "SPEC")]
        measure: String,
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        thresholds: Vec<String>,
        /// Use these bounds instead of searching for them.
        #[arg(long, value_name = "LIST", value_delimiter = ',')]
        bounds: Vec<String>,
    },
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    /// Hidden game: a profile whose entries carry thresholds.
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,
    #[arg(long, value_name = "N")]
    pub n: usize,
    /// Learn only this agent's threshold.
    #[arg(long, value_name = "I")]
    pub agent: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Random,
    FirstBlocking,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("start").required(true).args(["graph", "n"])))]
pub struct DynamicsArgs {
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,
    /// Start graph.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Start from the empty graph on this many vertices.
    #[arg(long, value_name = "N")]
    pub n: Option<usize>,
    /// Random seed; required so runs are reproducible.
    #[arg(long, value_name = "SEED")]
    pub seed: u64,
    #[arg(long, value_name = "K", default_value_t = 1000)]
    pub max_steps: usize,
    #[arg(long, value_enum, default_value_t = Rule::Random)]
    pub rule: Rule,
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    #[arg(long, value_name = "FILE")]
    pub graph: PathBuf,
    /// Label vertices with their agent and own centrality.
    #[arg(long, value_name = "FILE", conflicts_with = "measure")]
    pub profile: Option<PathBuf>,
    /// Label vertices with this measure.
    #[arg(long, value_name = "SPEC")]
    pub measure: Option<String>,
}
