use std::fmt;
use std::path::Path;

use serde_json::json;

/// A domain error: exit code 1 with `{"error": {"code", "message"}}` on stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new("invalid_parameter", message)
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new("io", format!("{}: {e}", path.display()))
    }

    pub fn to_json(&self) -> String {
        json!({ "error": { "code": self.code, "message": self.message } }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

macro_rules! from_coded {
    ($($t:ty),* $(,)?) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::new(e.code(), e.to_string())
            }
        }
    )*};
}

from_coded!(
    apsn_core::CentralityError,
    apsn_core::GameError,
    apsn_core::graph::ParseError,
    apsn_core::game::ProfileError,
    apsn_core::census::CensusError,
    apsn_core::structure::StructureError,
    apsn_core::truncated::TruncatedError,
    apsn_core::learning::LearningError,
);

impl From<apsn_core::GraphError> for CliError {
    fn from(e: apsn_core::GraphError) -> Self {
        let code = match e {
            apsn_core::GraphError::TooManyVertices { .. } => "size_guard",
            _ => "invalid_graph",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<apsn_core::ValueError> for CliError {
    fn from(e: apsn_core::ValueError) -> Self {
        CliError::invalid(e.to_string())
    }
}
