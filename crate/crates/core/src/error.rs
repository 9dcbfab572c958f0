use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("tropicalization of the zero polynomial is undefined")]
    EmptyTropicalization,

    #[error("operation requires a nonempty polynomial")]
    EmptyPolynomial,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("invalid Young diagram: {0}")]
    InvalidDiagram(String),

    #[error("step set has {got} members, expected {expected}")]
    StepCardinality { expected: usize, got: usize },

    #[error("partition has {rows} rows but only {n} variables")]
    TooManyRows { rows: usize, n: usize },

    #[error("chart restriction failed: {0}")]
    ChartRestriction(String),

    #[error("inconsistent period sequence: {0}")]
    InconsistentPeriods(String),

    #[error("coefficient at t^{exponent} is outside the trusted window (floor {floor})")]
    Untrusted { exponent: i64, floor: i64 },

    #[error("reconstruction inconsistency: {0}")]
    ReconstructionInconsistency(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
