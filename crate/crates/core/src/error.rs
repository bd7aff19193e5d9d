use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown Cartan type `{0}`")]
    UnknownCartanType(String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("word {0:?} is not a reduced word for the longest element")]
    NotLongestWord(Vec<usize>),
    #[error("operation requires a simply-laced type, got {0}")]
    NotSimplyLaced(String),
    #[error("rank {rank} exceeds the supported bound {bound} for {what}")]
    RankTooLarge { rank: usize, bound: usize, what: &'static str },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("crystal operator e~_{i} undefined: epsilon is zero")]
    EpsilonZero { i: usize },
    #[error("division by zero: {0} vanishes")]
    DivisionByZero(String),
    #[error("unsupported denominator: {0}")]
    UnsupportedDenominator(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("basis is not a weight basis: {0}")]
    NotWeightBasis(String),
    #[error("linear system is singular: {0}")]
    Singular(String),
    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("counting data is not polynomial: {0}")]
    NonPolynomialCount(String),
    #[error("submodule set not field-stable: {0}")]
    FieldUnstable(String),
    #[error("preprojective relation fails: {0}")]
    RelationFails(String),
    #[error("ambiguous crystal partner: {0}")]
    Ambiguous(String),
    #[error("value {0} is not invertible in F_{1}")]
    NotInvertibleModP(String, u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cache lock timed out at {0}")]
    LockTimeout(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
