use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field size {0} is not a supported prime (use 0 for the rationals)")]
    BadField(u64),
    #[error("annulus needs p >= 1 and q >= 1, got p={p}, q={q}")]
    BadSurface { p: i64, q: i64 },
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("triangulation needs {expected} arcs, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("arcs {0} and {1} cross")]
    CrossingPair(usize, usize),
    #[error("face decomposition failed: {0}")]
    FaceDecompositionFailure(String),
    #[error("path algebra is not finite-dimensional")]
    NonFiniteDimensional,
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("cannot parse word {text:?}: {reason}")]
    WordSyntax { text: String, reason: String },
    #[error("ideal is not generated by vertices and arrows")]
    IdealNotDegreeOne,
    #[error("not a full asymptotic triangulation: {0}")]
    NotMaximal(String),
    #[error("completion blocked at winding bound {0}; retry with a larger bound")]
    CompletionBlocked(i64),
    #[error("band parameter must be nonzero")]
    ZeroBandParameter,
    #[error("band size must be at least 1")]
    ZeroBandSize,
    #[error("short exact sequence check failed: {0}")]
    ExactnessFailure(String),
    #[error("complex window too shallow: depth {0}")]
    WindowTooShallow(usize),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("malformed input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
