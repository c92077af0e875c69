//! Structural characterizations of stable networks, checked against the
//! engine by exhaustive search.

mod axioms;
mod betweenness;
mod eccentricity;
mod lemmas;
mod monotone;
mod stratified;

pub use axioms::{falsify_axiom, Axiom, AxiomViolation, FalsifierReport, MAX_FALSIFIER_VERTICES};
pub use betweenness::betweenness_condition;
pub use eccentricity::{ecc_necessary, ecc_sufficient, radius};
pub use lemmas::{check_betweenness_lemma, check_eccentricity_lemma, LemmaReport, LemmaViolation};
pub use monotone::{check_monotone_structure, infer_types, TypeCandidates};
pub use stratified::{is_stratified, stratified_sequences, validate_homophily, CliqueSequence};

use thiserror::Error;

use crate::centrality::CentralityError;
use crate::game::GameError;
use crate::graph::GraphError;
use crate::value::ValueError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("not a monotone APSN shape: no type assignment makes this graph stable")]
    NotMonotoneShape,
    #[error("type list has {got} entries for a graph on {n} vertices")]
    TypeCount { got: usize, n: usize },
    #[error("homophily function violates the hypotheses: {0}")]
    Homophily(String),
    #[error("search limit is {max} vertices, got {n}")]
    Size { n: usize, max: usize },
    #[error("unknown axiom {0:?}; expected 1, 1p, 2, 2p, 3 or 4")]
    UnknownAxiom(String),
    #[error(transparent)]
    Centrality(#[from] CentralityError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Value(#[from] ValueError),
}

impl StructureError {
    pub fn code(&self) -> &'static str {
        match self {
            StructureError::NotMonotoneShape => "not_monotone_shape",
            StructureError::TypeCount { .. } => "invalid_types",
            StructureError::Homophily(_) => "invalid_parameter",
            StructureError::Size { .. } => "size_guard",
            StructureError::UnknownAxiom(_) => "unknown_axiom",
            StructureError::Centrality(e) => e.code(),
            StructureError::Game(e) => e.code(),
            StructureError::Graph(GraphError::TooManyVertices { .. }) => "size_guard",
            StructureError::Graph(_) => "invalid_graph",
            StructureError::Value(_) => "arithmetic",
        }
    }
}
