//! Network formation games whose agents maximize a centrality measure at a
//! vanishing per-edge cost.

pub mod census;
pub mod centrality;
pub mod game;
pub mod graph;
pub mod learning;
pub mod structure;
pub mod truncated;
pub mod linalg;
pub mod value;

pub use centrality::{centralities, centrality, CentralityError, Measure};
pub use game::{is_apsn, AgentProfile, GameError, GameSpec, MonotoneType, NumericPolicy, StabilityReport};
pub use graph::{Distance, DistanceMatrix, Graph, GraphError};
pub use value::{ExtRational, Value, ValueError};
