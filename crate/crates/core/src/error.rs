use thiserror::Error;

/// Errors raised by construction and evaluation routines.
///
/// Verification failures are never errors: operations that check identities
/// report their verdicts through [`crate::report::VerificationReport`].
/// Errors are reserved for malformed inputs and violated preconditions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown object label `{0}`")]
    UnknownObject(String),

    #[error("unknown edge label `{0}`")]
    UnknownEdge(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("empty letter sequence has no endpoints; use an explicit identity path")]
    EmptyLetterSequence,

    #[error("letters at positions {position} and {} are not composable: {detail}", position + 1)]
    NotComposable { position: usize, detail: String },

    #[error("functors are defined over different groupoids")]
    DomainMismatch,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a relabeling functor: {0}")]
    NotARelabeling(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("ribbon graph is disconnected; compute per-component invariants instead")]
    Disconnected,

    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),

    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
