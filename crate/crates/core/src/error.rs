use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: self-loop on node `{label}`")]
    SelfLoop { line: usize, label: String },

    #[error("line {line}: duplicate edge `{u}`-`{v}`")]
    DuplicateEdge { line: usize, u: String, v: String },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("graph is disconnected: {components} components, node `{stray}` is unreachable from `{root}`")]
    Disconnected {
        components: usize,
        root: String,
        stray: String,
    },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("invalid JSON graph: {0}")]
    Json(String),

    #[error("node index {index} out of range for a graph with {node_count} nodes")]
    InvalidNode { index: usize, node_count: usize },

    #[error("unknown node label `{0}`")]
    UnknownLabel(String),

    #[error("endpoints must be distinct")]
    SameEndpoints,

    #[error("invalid exponent `{0}`: expected a real p >= 1 or `inf`")]
    InvalidExponent(String),

    #[error("density has {got} entries but the graph has {expected} edges")]
    DensityLength { expected: usize, got: usize },

    #[error("density entry {index} is {value}, expected a finite nonnegative real")]
    NegativeDensity { index: usize, value: f64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("simple path enumeration exceeded the cap of {cap} paths")]
    PathCapExceeded { cap: usize },

    #[error("active path set exceeded the cap of {cap} paths")]
    ActiveSetCapExceeded { cap: usize },

    #[error("path family is empty")]
    EmptyFamily,

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    Asymmetric(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("failed to draw a connected graph after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
