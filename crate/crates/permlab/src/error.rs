use thiserror::Error;

/// Errors shared by every layer of the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("group is not transitive")]
    NotTransitive,

    #[error("group is not primitive")]
    NotPrimitive,

    #[error("group is primitive (operation needs an imprimitive group)")]
    PrimitiveInput,

    #[error("invalid block system: {0}")]
    InvalidBlockSystem(String),

    #[error("set is not invariant under the group")]
    NotInvariant,

    #[error("element is not a member of the group")]
    NotInGroup,

    #[error("resource limit exceeded: {what} needs {needed}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures that mean "too big to enumerate", which checks
    /// report as SKIPPED rather than FAIL.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
