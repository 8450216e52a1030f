use thiserror::Error;

/// Errors produced by matrix construction, parsing and the constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of bounds: ({row}, {col}) in a {m}x{n} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        m: usize,
        n: usize,
    },
    #[error("duplicate edge ({row}, {col})")]
    DuplicateEdge { row: usize, col: usize },
    #[error("empty dimension: m = {m}, n = {n}")]
    EmptyDimension { m: usize, n: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("parameters out of range: {0}")]
    ParamsOutOfRange(String),
    #[error("unsupported girth {0}")]
    UnsupportedGirth(usize),
    #[error("kernel too large: nullity {nullity} exceeds {limit}")]
    KernelTooLarge { nullity: usize, limit: usize },
    #[error("no canonical codeword defined for w_c = {wc}, w_r = {wr}")]
    NoCanonicalCodeword { wc: usize, wr: usize },
    #[error("sequence is not strictly increasing positive integers")]
    NotIncreasing,
    #[error("sequence contains 3-AP: {0} + {2} = 2 * {1}")]
    ContainsAp(u64, u64, u64),
    #[error("sequence too short: need {need} terms, got {got}")]
    SequenceTooShort { need: usize, got: usize },
    #[error("root bracketing failed")]
    Bracketing,
    #[error("grid too small: need at least {need} strictly increasing points")]
    GridTooSmall { need: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
