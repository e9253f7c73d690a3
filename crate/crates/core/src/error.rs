use thiserror::Error;

/// Errors surfaced by the engine's fallible operations.
#[derive(Debug, Error)]
pub enum GtError {
    #[error("point is not in normal form: {0}")]
    NotNormalForm(String),
    #[error("point is not a seed: {0}")]
    NotSeed(String),
    #[error("shift is not in the admissible set D(seed): {0}")]
    ShiftNotAdmissible(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph is not acyclic")]
    CyclicGraph,
    #[error("evaluation at a pole of a rational function")]
    PoleEvaluation,
    #[error("oracle failure: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, GtError>;
