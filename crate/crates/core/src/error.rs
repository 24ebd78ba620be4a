use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid vertex {0:?}")]
    InvalidVertex(String),
    #[error("graph has no cycle")]
    NoCycle,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed input at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} holds fewer than 2 pebbles")]
    NotEnoughPebbles(usize),
    #[error("configuration has {got} entries but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("SNL hypothesis violated: balls N_{a}[{u}] and N_{b}[{v}] intersect")]
    SnlHypothesis { u: usize, v: usize, a: u32, b: u32 },
    #[error("map is not total: vertex {0} has no image")]
    MapNotTotal(usize),
    #[error("retract check failed: {0}")]
    RetractFailed(String),
    #[error("aggregation unbounded: vertex {0} has zero total coefficient")]
    Uncovered(String),
    #[error("no valid tree: infeasible vertices {0:?}")]
    NoValidTree(Vec<String>),
    #[error("strategies do not share a root")]
    RootMismatch,
    #[error("empty strategy set")]
    EmptyStrategySet,
    #[error("unknown corpus id {0:?}")]
    UnknownId(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("inconsistent bounds: lower {lower} ({lower_from}) exceeds upper {upper} ({upper_from})")]
    Inconsistent {
        lower: u64,
        lower_from: String,
        upper: u64,
        upper_from: String,
    },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
