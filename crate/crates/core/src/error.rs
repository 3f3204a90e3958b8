use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node set over a universe of {found} nodes used where {expected} nodes were expected")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("negative weight or capacity")]
    NegativeWeight,
    #[error("hyperedge {0} has no members")]
    EmptyHyperedge(usize),
    #[error("source and sink must differ")]
    SourceIsSink,
    #[error("invalid oracle: {0}")]
    InvalidOracle(String),
    #[error("labeling is not defined on node {0}")]
    IncompleteLabeling(usize),
    #[error("node {0} is seeded with both labels")]
    ContradictorySeeds(usize),
    #[error("exhaustive search over {free} free nodes exceeds the limit of {limit}")]
    DeskScaleLimit { free: usize, limit: usize },
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("construction undefined: {0}")]
    ConstructionUndefined(String),
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },
    #[error("class {0} has zero score mass but a nonzero labeled proportion")]
    DegenerateNormalization(usize),
    #[error("kernel bandwidth is zero (all neighbor distances vanish)")]
    DegenerateBandwidth,
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dataset mismatch: {0}")]
    DatasetMismatch(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
