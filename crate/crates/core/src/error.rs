use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph on {0} vertices exceeds the supported cap")]
    TooManyVertices(usize),
    #[error("edge {u}-{v} out of range for {n} vertices")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("repeated edge {0}-{1}")]
    ParallelEdge(usize, usize),
    #[error("malformed edge list: {0:?}")]
    EdgeListSyntax(String),
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: malformed header byte {byte:#04x}")]
    Header { offset: usize, byte: u8 },
    #[error("byte {offset}: character {byte:#04x} outside the graph6 range")]
    OutOfRange { offset: usize, byte: u8 },
    #[error("byte {offset}: bit vector truncated, expected {expected} bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: unexpected trailing data")]
    Trailing { offset: usize },
    #[error("byte {offset}: non-zero padding bits")]
    Padding { offset: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("edge bound {requested} outside 1..={cap}")]
    BoundExceeded { requested: usize, cap: usize },
    #[error("catalog line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error("catalog line {line}: {reason}")]
    Invalid { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("pattern graph has an isolated vertex")]
    IsolatedVertex,
    #[error("pattern graph is not connected")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("edge-subgraph poset of a graph without edges")]
    EmptyGraph,
    #[error("induced-subgraph poset or bond lattice of the null graph")]
    NullGraph,
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("poset has {0} elements, labels given for {1}")]
    LabelCount(usize, usize),
    #[error("poset file line {line}: {reason}")]
    Format { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("catalog bound {0} too small, need at least 6 edges")]
    CatalogTooSmall(usize),
    #[error("{name} did not resolve uniquely; candidates: {candidates:?}")]
    NotUnique { name: String, candidates: Vec<String> },
    #[error("exceptional table is missing {0}")]
    Unresolved(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("table file line {line}: {reason}")]
    Format { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("poset top rank {rank} exceeds catalog bound {bound}")]
    RankExceedsCatalog { rank: i64, bound: usize },
    #[error("no graph in the catalog has this abstract edge-subgraph poset")]
    NoCandidates,
    #[error("input is not an edge-subgraph poset")]
    WrongKind,
    #[error("annotation ambiguous at elements {0:?}")]
    Ambiguous(Vec<usize>),
    #[error("inversion disagrees with the bond lattice of candidate {0}")]
    CrossCheck(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}
