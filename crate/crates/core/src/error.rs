use thiserror::Error;

#[derive(Debug, Error)]
pub enum HikeError {
    #[error("malformed graph document: {0}")]
    Malformed(String),

    #[error("{location}: endpoint {vertex} out of range for n = {n}")]
    EndpointOutOfRange {
        location: String,
        vertex: usize,
        n: usize,
    },

    #[error("{location}: duplicate arc ({tail}, {head})")]
    DuplicateArc {
        location: String,
        tail: usize,
        head: usize,
    },

    #[error("size limit exceeded: {what} ({actual} > {limit})")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("hike or series belongs to a different prime catalog")]
    CatalogMismatch,

    #[error("series is not invertible: zero coefficient at the trivial hike")]
    NotInvertible,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HikeError>;
