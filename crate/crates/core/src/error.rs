use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("color map covers {got} vertices, graph has {expected}")]
    ColorLength { expected: usize, got: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("overlapping identification: vertex {0} appears in more than one merge request")]
    OverlappingMerge(usize),

    #[error("cannot identify vertex {0} with itself")]
    SelfMerge(usize),

    #[error("invalid arc ({tail}, {head}): {reason}")]
    InvalidArc { tail: usize, head: usize, reason: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("unknown group spec `{0}`")]
    UnknownGroup(String),

    #[error("tree families disagree on d: {0} vs {1}")]
    ValencyMismatch(usize, usize),

    #[error("tree family `{family}` is certified only up to m = {certified:?}, need m = {needed}")]
    Uncertified {
        family: String,
        certified: Option<usize>,
        needed: usize,
    },

    #[error("size budget exceeded by {what}: {needed} vertices > {budget}")]
    VertexBudget {
        what: String,
        needed: u128,
        budget: usize,
    },

    #[error("search node budget exceeded after {nodes} nodes ({refinements} refinements)")]
    NodeBudget { nodes: u64, refinements: u64 },

    #[error("vertex subset is not invariant: generator maps {from} to {to}")]
    NotInvariant { from: usize, to: usize },

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),

    #[error("topological core: smoothing creates a {kind} at vertex {vertex}")]
    CoreDegenerate { kind: &'static str, vertex: usize },

    #[error("{0}")]
    Invalid(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::VertexBudget { .. } | Error::NodeBudget { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
