use std::path::PathBuf;

use thiserror::Error;

/// Failure while reading a QAPLIB `.dat` stream. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input: expected the problem size")]
    Empty,
    #[error("line {line}, column {column}: expected an integer, found `{token}`")]
    MalformedToken {
        line: usize,
        column: usize,
        token: String,
    },
    #[error("line {line}, column {column}: problem size must be a positive integer, found {value}")]
    InvalidSize {
        line: usize,
        column: usize,
        value: String,
    },
    #[error("line {line}, column {column}: matrix entry must be non-negative, found {value}")]
    NegativeEntry {
        line: usize,
        column: usize,
        value: i64,
    },
    #[error("expected {expected} matrix entries, found {found}")]
    TooFewEntries { expected: usize, found: usize },
    #[error("line {line}, column {column}: unexpected trailing token `{token}`")]
    TrailingGarbage {
        line: usize,
        column: usize,
        token: String,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("arithmetic overflow while evaluating cost")]
    Overflow,
    #[error("index {index} out of range for size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("swap requires two distinct indices, got {0} twice")]
    SameIndex(usize),
    #[error("invalid cut points ({cut1}, {cut2}) for length {n}")]
    InvalidCuts { cut1: usize, cut2: usize, n: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("cost list is empty")]
    EmptyCosts,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("instance size {n} exceeds the exhaustive search limit {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("baselines: {0}")]
    Baseline(String),
    #[error("no baseline record for instance `{0}`")]
    MissingBaseline(String),
    #[error("best-known value must be positive, got {0}")]
    NonPositiveBestKnown(i64),
    #[error("report: {0}")]
    Report(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
