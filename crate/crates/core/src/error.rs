use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("matrix is singular")]
    Singular,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("facet {facet:?} spans a degenerate simplex")]
    DegenerateFacet { facet: Vec<usize> },
    #[error("facet {facet:?} is not positively decorated")]
    NotDecorated { facet: Vec<usize> },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
