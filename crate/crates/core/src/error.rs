use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),

    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),

    #[error("polarity is degenerate: expected {expected} absolute points, found {found}")]
    PolarityDegenerate { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0} rejected")]
    SelfLoopRejected(usize),

    #[error("instance too large: n = {n} exceeds the cap of {cap}")]
    InstanceTooLarge { n: usize, cap: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("spectral identity A^2 = J + qI failed at ({row}, {col}): found {found}, expected {expected}")]
    IdentityFailed {
        row: usize,
        col: usize,
        found: u64,
        expected: u64,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph6 data: {0}")]
    Graph6(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
