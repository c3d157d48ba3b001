use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("enumeration bound exceeded: asked for {requested} vertices, bound is {bound}")]
    BoundExceeded { requested: usize, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid graph6 string: {0}")]
    Graph6(String),
    #[error("unknown graph name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax { line, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropertyError {
    #[error("property `{0}` has no forbidden graphs")]
    Empty(String),
    #[error("property `{name}`: forbidden graph on {order} vertices would exclude K0 or K1")]
    TrivialForbidden { name: String, order: usize },
    #[error("property `{0}` is not additive (it has a disconnected forbidden graph)")]
    NotAdditive(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("at least one property is required")]
    NoProperties,
    #[error("exhaustive enumeration of {parts}^{vertices} assignments exceeds the ceiling {ceiling}")]
    CeilingExceeded { parts: usize, vertices: usize, ceiling: u64 },
    #[error("enumeration cap of {0} partitions reached before the search finished")]
    CapReached(usize),
    #[error("search node budget of {0} exhausted")]
    NodeBudget(u64),
    #[error("assignment has {got} entries but the graph has {expected} vertices")]
    WrongLength { got: usize, expected: usize },
    #[error("vertex {vertex} assigned to part {part} but only {parts} parts exist")]
    PartOutOfRange { vertex: usize, part: usize, parts: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("fixture is not strongly uniquely partitionable for the given properties")]
    NotStronglyUnique,
    #[error("the last part of the fixture partition is empty")]
    EmptyLastPart,
    #[error("fixture part for {0} is empty, no anchor vertex available")]
    EmptyAnchorPart(&'static str),
    #[error("vertex {0} is not in the first part of the fixture partition")]
    MisplacedVertex(usize),
    #[error("fixture partition is not a valid partition of the fixture graph")]
    InvalidFixturePartition,
    #[error("vertex {0} is asked to be forced into both parts")]
    ConflictingForce(usize),
    #[error("no port named `{0}`")]
    MissingPort(String),
    #[error("identifying vertex {0} with vertex {1} would create a self-loop")]
    WouldCreateLoop(usize, usize),
    #[error("pin cushion needs p + q >= 3, got p = {p}, q = {q}")]
    DegeneratePair { p: usize, q: usize },
    #[error("gadget failed verification: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("hypergraph has r = {r}, p = {p} but the property pair needs r = {expected_r}, p = {expected_p}")]
    ArityMismatch { r: usize, p: usize, expected_r: usize, expected_p: usize },
    #[error("brute force over 2^{0} vertex subsets exceeds the bound")]
    BoundExceeded(usize),
    #[error("colouring is not valid for the reduced graph: part {part} contains a forbidden graph on {witness:?}")]
    InvalidColouring { part: usize, witness: Vec<usize> },
    #[error("lifted set meets edge {edge} ({vertices:?}) in {count} vertices, expected {expected}")]
    CertificateViolation { edge: usize, vertices: Vec<usize>, count: usize, expected: usize },
    #[error("could not extend the encoded certificate to a colouring of the reduced graph")]
    EncodingFailed,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}
