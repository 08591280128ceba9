use thiserror::Error;

/// Errors raised while reading CoNLL-U input.
#[derive(Debug, Error)]
pub enum ConlluError {
    #[error("line {line}: expected 10 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: invalid token id {id:?}")]
    BadId { line: usize, id: String },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Structural problems in a single sentence. These do not abort parsing;
/// the offending sentence is skipped and reported.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("sentence is empty")]
    Empty,
    #[error("token {token}: head {head} is out of range or refers to a skipped token")]
    BadHead { token: usize, head: String },
    #[error("token {0} is its own head")]
    SelfLoop(usize),
    #[error("expected exactly one root, found {0}")]
    RootCount(usize),
    #[error("head structure contains a cycle through token {0}")]
    Cycle(usize),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SampleError {
    #[error("distance sample is empty")]
    Empty,
    #[error("distance must be at least 1, got {0}")]
    ZeroDistance(u32),
    #[error("malformed sample file at line {line}: {msg}")]
    Format { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{name} = {value} is outside its domain ({domain})")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("break point {d_star} exceeds truncation point {d_max}")]
    BreakBeyondTruncation { d_star: u32, d_max: u32 },
    #[error("length distribution is empty or does not sum to one")]
    BadLengthDistribution,
}
