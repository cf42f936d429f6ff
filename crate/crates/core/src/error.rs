use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The CLI maps these onto exit codes: `BoundExceeded` is 3, `VerificationFailed`
/// is 1, everything else is a usage/precondition error (2).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("enumeration exceeds cap of {cap} ({what})")]
    CapExceeded { what: String, cap: u64 },

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("backend not admissible: {0}")]
    NotAdmissible(String),

    #[error("unsupported for this backend: {0}")]
    Unsupported(String),

    #[error("automorphism has no generator word; it cannot be inverted")]
    MissingGenword,

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
