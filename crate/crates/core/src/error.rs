use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("expected two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("polygon size {0} is below 3")]
    PolygonTooSmall(usize),
    #[error("({i}, {j}) is not a chord of the {n}-gon")]
    InvalidChord { n: usize, i: usize, j: usize },
    #[error("chords ({}, {}) and ({}, {}) cross", .first.0, .first.1, .second.0, .second.1)]
    CrossingChords {
        first: (usize, usize),
        second: (usize, usize),
    },
    #[error("vertices {u} and {v} are not a split pair of the cycle")]
    NotASplitPair { u: usize, v: usize },
    #[error("vertex {0} is not on the cycle")]
    NotOnCycle(usize),
    #[error("input is not a tree")]
    NotATree,
    #[error("graph is not pseudo-BOP: {0}")]
    NotPseudoBop(String),
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("expected r >= 1")]
    ZeroRadius,
    #[error("bound argument {name} = {value} is below 1")]
    BoundArgument { name: &'static str, value: f64 },
    #[error("unknown bound formula {0}")]
    UnknownFormula(String),
    #[error("halving hypothesis violated: {0}")]
    HalvingHypothesis(String),
    #[error("game memo table exceeded {0} entries")]
    MemoOverflow(usize),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid config: {0}")]
    Config(String),
    #[error("property violation: {0}")]
    Violation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
