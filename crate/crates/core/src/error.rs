use thiserror::Error;

/// Errors produced by the group, matrix, graph and circulant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("group has infinite order")]
    InfiniteOrder,

    #[error("element has infinite order in the cokernel")]
    InfiniteElementOrder,

    #[error("malformed order statistics: {0}")]
    MalformedStatistics(String),

    #[error("reduced Laplacian of a single-vertex graph is empty")]
    EmptyMatrix,

    #[error("ring of size {size} exceeds the brute-force cap {cap}")]
    ResourceLimit { size: u128, cap: u128 },

    #[error("internal consistency failure: {0}")]
    Logic(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
