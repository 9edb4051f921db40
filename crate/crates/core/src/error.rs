use thiserror::Error;

use crate::prob::StructureResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variables {0:?} appear in both the target and the conditioning set")]
    OverlappingSets(Vec<String>),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("channel kind `{kind}` is not supported by {operation}")]
    UnsupportedChannel { kind: String, operation: String },

    #[error("{what}: {count} exceeds the cap of {cap}")]
    CapExceeded { what: String, count: u128, cap: u128 },

    #[error("unachievable at any source-channel rate: {0}")]
    Unachievable(String),

    #[error("precondition violated: {}", describe(.0))]
    Precondition(Vec<StructureResult>),

    #[error("the joint distribution has empty support")]
    EmptySupport,

    #[error("model file: {0}")]
    Model(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn describe(report: &[StructureResult]) -> String {
    report
        .iter()
        .filter(|r| !r.holds)
        .map(|r| format!("{} (max deviation {:.3e})", r.name, r.max_deviation))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// True for errors caused by malformed input rather than by a violated
    /// theorem hypothesis.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Precondition(_) | Error::Unachievable(_))
    }
}
