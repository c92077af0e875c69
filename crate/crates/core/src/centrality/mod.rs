//! Centrality measures. Exact values wherever the definition allows, floats
//! with tolerance for the spectral family.

mod oracles;
mod paths;
mod spectral;
mod walk;
mod weights;

pub use oracles::{brute_betweenness, brute_shapley, rw_betweenness_absorbing, ORACLE_MAX_VERTICES};
pub use spectral::{eigenvector_scores, katz_scores, lambda_max, pagerank_scores, SpectralScores};
pub use walk::hitting_times;
pub use weights::WeightTable;

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, ParseError};
use crate::value::{ExtRational, Value};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CentralityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid measure parameter: {0}")]
    Parameter(String),
    #[error("{what} did not converge within {iterations} iterations")]
    Convergence { what: &'static str, iterations: usize },
    #[error("unknown measure {0:?}")]
    UnknownMeasure(String),
    #[error("weight table: {0}")]
    Weights(String),
    #[error("weight table: {0}")]
    WeightsParse(#[from] ParseError),
}

impl CentralityError {
    pub fn code(&self) -> &'static str {
        match self {
            CentralityError::Graph(GraphError::TooManyVertices { .. }) => "size_guard",
            CentralityError::Graph(_) => "invalid_graph",
            CentralityError::Parameter(_) => "measure_parameter",
            CentralityError::Convergence { .. } => "convergence",
            CentralityError::UnknownMeasure(_) => "unknown_measure",
            CentralityError::Weights(_) | CentralityError::WeightsParse(_) => "weight_table",
        }
    }
}

/// A centrality measure with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Measure {
    Degree,
    /// `C_w[i] = Σ_{ij ∈ E} w_ij`.
    Linear(Arc<WeightTable>),
    Closeness,
    Eccentricity,
    RwCloseness,
    /// `Σ_{j ≠ i reachable} β^{d(i,j)}`, `0 < β < 1`.
    Decay(BigRational),
    Harmonic,
    Betweenness,
    RwBetweenness,
    Eigenvector,
    /// Attenuation `α`; `None` selects `1/(2(n-1))`.
    Katz(Option<f64>),
    PageRank(f64),
    GameTheoretic,
}

impl Measure {
    pub fn decay(p: i64, q: i64) -> Result<Self, CentralityError> {
        let beta = BigRational::new(BigInt::from(p), BigInt::from(q));
        if !beta.is_positive() || beta >= BigRational::one() {
            return Err(CentralityError::Parameter(format!("decay factor {beta} must lie in (0, 1)")));
        }
        Ok(Measure::Decay(beta))
    }

    pub fn katz(alpha: f64) -> Result<Self, CentralityError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(CentralityError::Parameter(format!("katz attenuation {alpha} must lie in (0, 1)")));
        }
        Ok(Measure::Katz(Some(alpha)))
    }

    pub fn pagerank(damping: f64) -> Result<Self, CentralityError> {
        if !(damping > 0.0 && damping < 1.0) {
            return Err(CentralityError::Parameter(format!("pagerank damping {damping} must lie in (0, 1)")));
        }
        Ok(Measure::PageRank(damping))
    }

    /// Parses the measure grammar. `linear:<file>` is resolved against `base`.
    pub fn parse(s: &str, base: Option<&Path>) -> Result<Self, CentralityError> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let no_arg = |m: Measure| match arg {
            None => Ok(m),
            Some(_) => Err(CentralityError::Parameter(format!("{name} takes no parameter"))),
        };
        match name {
            "degree" => no_arg(Measure::Degree),
            "closeness" => no_arg(Measure::Closeness),
            "eccentricity" => no_arg(Measure::Eccentricity),
            "rwcloseness" => no_arg(Measure::RwCloseness),
            "harmonic" => no_arg(Measure::Harmonic),
            "betweenness" => no_arg(Measure::Betweenness),
            "rwbetweenness" => no_arg(Measure::RwBetweenness),
            "eigenvector" => no_arg(Measure::Eigenvector),
            "gametheoretic" => no_arg(Measure::GameTheoretic),
            "decay" => {
                let arg = arg.ok_or_else(|| CentralityError::Parameter("decay needs a factor p/q".into()))?;
                let beta: ExtRational =
                    arg.parse().map_err(|_| CentralityError::Parameter(format!("bad decay factor {arg:?}")))?;
                match beta {
                    ExtRational::Finite(b) if b.is_positive() && b < BigRational::one() => Ok(Measure::Decay(b)),
                    _ => Err(CentralityError::Parameter(format!("decay factor {arg} must lie in (0, 1)"))),
                }
            }
            "katz" => match arg {
                None => Ok(Measure::Katz(None)),
                Some(a) => Measure::katz(parse_float(a)?),
            },
            "pagerank" => match arg {
                None => Ok(Measure::PageRank(0.85)),
                Some(a) => Measure::pagerank(parse_float(a)?),
            },
            "linear" => {
                let arg = arg.ok_or_else(|| CentralityError::Parameter("linear needs a weight file".into()))?;
                let path = match base {
                    Some(b) if Path::new(arg).is_relative() => b.join(arg),
                    _ => Path::new(arg).to_path_buf(),
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CentralityError::Weights(format!("{}: {e}", path.display())))?;
                let mut table = WeightTable::parse(&text)?;
                table.source = Some(arg.to_string());
                Ok(Measure::Linear(Arc::new(table)))
            }
            _ => Err(CentralityError::UnknownMeasure(s.to_string())),
        }
    }

    /// Whether results are exact rationals.
    pub fn is_exact(&self) -> bool {
        !matches!(self, Measure::Eigenvector | Measure::Katz(_) | Measure::PageRank(_))
    }

    pub fn is_spectral(&self) -> bool {
        !self.is_exact()
    }

    /// Needs a rational linear solve per evaluation.
    pub fn is_random_walk(&self) -> bool {
        matches!(self, Measure::RwCloseness | Measure::RwBetweenness)
    }

    /// Strictly increasing on every edge addition (known statically).
    pub fn is_increasing(&self) -> bool {
        match self {
            Measure::Degree | Measure::Harmonic | Measure::Decay(_) | Measure::Katz(_) | Measure::PageRank(_) => true,
            Measure::Linear(w) => w.all_off_diagonal_positive(),
            _ => false,
        }
    }

    /// Increasing, zero on isolated vertices, and never increased by an edge
    /// elsewhere.
    pub fn is_regular(&self) -> bool {
        match self {
            Measure::Degree => true,
            Measure::Linear(w) => w.all_off_diagonal_positive(),
            _ => false,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Degree => "degree",
            Measure::Linear(_) => "linear",
            Measure::Closeness => "closeness",
            Measure::Eccentricity => "eccentricity",
            Measure::RwCloseness => "rwcloseness",
            Measure::Decay(_) => "decay",
            Measure::Harmonic => "harmonic",
            Measure::Betweenness => "betweenness",
            Measure::RwBetweenness => "rwbetweenness",
            Measure::Eigenvector => "eigenvector",
            Measure::Katz(_) => "katz",
            Measure::PageRank(_) => "pagerank",
            Measure::GameTheoretic => "gametheoretic",
        }
    }
}

fn parse_float(s: &str) -> Result<f64, CentralityError> {
    if let Ok(ExtRational::Finite(r)) = s.parse::<ExtRational>() {
        return Ok(ExtRational::Finite(r).to_f64());
    }
    Err(CentralityError::Parameter(format!("not a number: {s:?}")))
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Decay(b) => write!(f, "decay:{}/{}", b.numer(), b.denom()),
            Measure::Katz(Some(a)) => write!(f, "katz:{a}"),
            Measure::PageRank(d) => write!(f, "pagerank:{d}"),
            Measure::Linear(w) => match &w.source {
                Some(src) => write!(f, "linear:{src}"),
                None => write!(f, "linear:<inline n={}>", w.n()),
            },
            m => f.write_str(m.name()),
        }
    }
}

/// Centrality of vertex `i`.
pub fn centrality(m: &Measure, g: &Graph, i: usize) -> Result<Value, CentralityError> {
    g.check_vertex(i)?;
    Ok(match m {
        Measure::Degree => Value::int(g.degree(i) as i64),
        Measure::Linear(w) => Value::rational(paths::linear(w, g, i)?),
        Measure::Closeness => Value::Exact(paths::closeness(g, i)),
        Measure::Eccentricity => Value::rational(paths::eccentricity(g, i)),
        Measure::Harmonic => Value::rational(paths::harmonic(g, i)),
        Measure::Decay(beta) => Value::rational(paths::decay(beta, g, i)),
        Measure::Betweenness => Value::rational(paths::betweenness_all(g).swap_remove(i)),
        Measure::GameTheoretic => Value::rational(paths::game_theoretic(g, i)),
        Measure::RwCloseness => Value::Exact(walk::rw_closeness(g, i)),
        Measure::RwBetweenness => Value::rational(walk::rw_betweenness(g, i)),
        Measure::Eigenvector | Measure::Katz(_) | Measure::PageRank(_) => {
            centralities(m, g)?.swap_remove(i)
        }
    })
}

/// Centrality of every vertex.
pub fn centralities(m: &Measure, g: &Graph) -> Result<Vec<Value>, CentralityError> {
    match m {
        Measure::Betweenness => Ok(paths::betweenness_all(g).into_iter().map(Value::rational).collect()),
        Measure::Eigenvector => Ok(spectral::to_values(eigenvector_scores(g)?.scores)),
        Measure::Katz(alpha) => Ok(spectral::to_values(katz_scores(g, *alpha)?.scores)),
        Measure::PageRank(d) => Ok(spectral::to_values(pagerank_scores(g, *d)?.scores)),
        _ => g.vertices().map(|i| centrality(m, g, i)).collect(),
    }
}

/// A note attached to centrality output, such as eigenvector centrality on a
/// disconnected graph.
pub fn warnings(m: &Measure, g: &Graph) -> Vec<String> {
    let mut out = Vec::new();
    if matches!(m, Measure::Eigenvector) && !g.is_connected() {
        out.push("spectrally degenerate: graph is disconnected".to_string());
    }
    out
}

pub(crate) fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub(crate) fn zero() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(m: &Measure, g: &Graph, i: usize) -> ExtRational {
        centrality(m, g, i).unwrap().exact().unwrap().clone()
    }

    #[test]
    fn game_theoretic_k2() {
        let g = Graph::complete(2).unwrap();
        assert_eq!(exact(&Measure::GameTheoretic, &g, 0), ExtRational::int(1));
    }

    #[test]
    fn betweenness_p3() {
        let g = Graph::path(3).unwrap();
        assert_eq!(exact(&Measure::Betweenness, &g, 1), ExtRational::int(1));
        assert_eq!(exact(&Measure::Betweenness, &g, 0), ExtRational::int(0));
    }

    #[test]
    fn closeness_p3() {
        let g = Graph::path(3).unwrap();
        assert_eq!(exact(&Measure::Closeness, &g, 0), ExtRational::ratio(1, 3));
        assert_eq!(exact(&Measure::Closeness, &g, 1), ExtRational::ratio(1, 2));
    }

    #[test]
    fn decay_half_p3_end() {
        let g = Graph::path(3).unwrap();
        assert_eq!(exact(&Measure::decay(1, 2).unwrap(), &g, 0), ExtRational::ratio(3, 4));
    }

    #[test]
    fn eccentricity_isolated_is_zero() {
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(exact(&Measure::Eccentricity, &g, 0), ExtRational::zero());
        assert_eq!(exact(&Measure::Eccentricity, &g, 1), ExtRational::int(2));
    }

    #[test]
    fn isolated_closeness_is_infinite() {
        let g = Graph::empty(3).unwrap();
        assert_eq!(exact(&Measure::Closeness, &g, 0), ExtRational::PosInf);
        assert_eq!(exact(&Measure::RwCloseness, &g, 0), ExtRational::PosInf);
    }

    #[test]
    fn grammar_round_trip() {
        for s in [
            "degree",
            "closeness",
            "eccentricity",
            "rwcloseness",
            "decay:1/2",
            "harmonic",
            "betweenness",
            "rwbetweenness",
            "eigenvector",
            "katz:0.1",
            "pagerank:0.85",
            "gametheoretic",
        ] {
            let m = Measure::parse(s, None).unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!(matches!(Measure::parse("katz", None).unwrap(), Measure::Katz(None)));
        assert_eq!(Measure::parse("pagerank", None).unwrap(), Measure::PageRank(0.85));
    }

    #[test]
    fn grammar_errors() {
        assert!(matches!(Measure::parse("foo", None), Err(CentralityError::UnknownMeasure(_))));
        assert!(matches!(Measure::parse("decay:3/2", None), Err(CentralityError::Parameter(_))));
        assert!(matches!(Measure::parse("decay:0", None), Err(CentralityError::Parameter(_))));
        assert!(matches!(Measure::parse("decay", None), Err(CentralityError::Parameter(_))));
        assert!(matches!(Measure::parse("katz:1.5", None), Err(CentralityError::Parameter(_))));
        assert!(matches!(Measure::parse("degree:3", None), Err(CentralityError::Parameter(_))));
        assert!(matches!(Measure::parse("linear:/no/such/file", None), Err(CentralityError::Weights(_))));
    }

    #[test]
    fn linear_from_file() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("w.txt"), "3\n0 1 2\n1 2 5\n").unwrap();
        let m = Measure::parse("linear:w.txt", Some(dir.path())).unwrap();
        let g = Graph::path(3).unwrap();
        assert_eq!(exact(&m, &g, 1), ExtRational::int(7));
        assert_eq!(m.to_string(), "linear:w.txt");
    }

    #[test]
    fn vertex_range_checked() {
        let g = Graph::path(3).unwrap();
        assert!(matches!(
            centrality(&Measure::Degree, &g, 3),
            Err(CentralityError::Graph(GraphError::VertexOutOfRange { .. }))
        ));
    }
}
