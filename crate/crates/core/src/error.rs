use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypergraph is not regular/uniform: {0}")]
    NotRegularUniform(String),

    #[error("hypergraph is disconnected")]
    Disconnected,

    #[error("matrix is not symmetric: entry ({row},{col}) differs from its transpose by {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("eigensolver failed to converge after {0} iterations")]
    NoConvergence(usize),

    #[error("LP hypothesis violated: {condition} (witness: {witness})")]
    LpHypothesis { condition: String, witness: String },

    #[error("linear program is {0}")]
    LpStatus(String),

    #[error("walk enumeration refused: {0}")]
    OracleLimit(String),

    #[error("integer overflow while computing {0}")]
    Overflow(String),

    #[error("invalid orthogonal array: {0}")]
    InvalidOa(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("zero finder disagreement: bisection {bisection} vs eigenvalue route {eigen}")]
    ZeroMismatch { bisection: f64, eigen: f64 },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("fixture self-check failed for `{name}`: {msg}")]
    FixtureCheck { name: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
