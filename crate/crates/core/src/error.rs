use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("not a win-lose game: entry ({row}, {col}) of {matrix} is {value}")]
    NotWinLose {
        matrix: char,
        row: usize,
        col: usize,
        value: String,
    },
    #[error("malformed constraint: {0}")]
    MalformedConstraint(String),
    #[error("rank deficient: rank {rank} < {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("{what} {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("assignment does not satisfy clause {clause}")]
    Unsatisfied { clause: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for errors caused by configured resource limits rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
