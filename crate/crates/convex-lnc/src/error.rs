use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("EMPTY_FIBER: target is not in the image of the body")]
    EmptyFiber,
    #[error("UNBOUNDED_BELOW: the body is unbounded along the direction")]
    UnboundedBelow,
    #[error("NON_SEPARATING: functional family does not separate the kernel")]
    NonSeparating,
    #[error("point is not in the body")]
    NotInBody,
    #[error("solver did not converge: {0}")]
    NonConvergence(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("UNSUPPORTED_IMAGE: exact linear image is not representable for this body")]
    UnsupportedImage,
    #[error("unknown gallery identifier `{0}`")]
    UnknownGallery(String),
    #[error("no explicit witness for `{0}`")]
    NoExplicitWitness(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("at path index {index}: {source}")]
    AtPathIndex { index: usize, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
