use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("edge `{0}` is a loop")]
    Loop(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vector length {found} does not match expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("edge `{0}` belongs to the spanning tree")]
    EdgeInTree(String),
    #[error("edge set is not a spanning tree")]
    NotSpanningTree,
    #[error("edge set is not a forest")]
    NotForest,
    #[error("indegree targets sum to {found}, expected {expected}")]
    DegreeSumMismatch { expected: i64, found: i64 },
    #[error("cycle or cut is not directed in the orientation")]
    NotDirected,
    #[error("divisor is not a break divisor")]
    NotBreak,
    #[error("iteration cap of {0} exceeded")]
    IterationCap(usize),
    #[error("edge ordering does not cover edge `{0}`")]
    MissingOrderingCoverage(String),
    #[error("invalid edge ordering: {0}")]
    InvalidOrdering(String),
    #[error("configuration has {found} entries, graph has {expected} cycles")]
    ConfigurationSize { expected: usize, found: usize },
    #[error("weights are perpendicular to cycle #{0}")]
    NonGeneric(usize),
    #[error("cycle orientation configuration is not acyclic")]
    NotAcyclic,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("ribbon graph is not planar (genus {0})")]
    NotPlanar(usize),
    #[error("graph has a bridge `{0}`")]
    HasBridge(String),
    #[error("face index {0} out of range")]
    UnknownFace(usize),
    #[error("edge `{edge}` is not incident to vertex `{vertex}`")]
    StartNotIncident { vertex: String, edge: String },
    #[error("divisor class must have degree {expected}, found {found}")]
    WrongDegree { expected: i64, found: i64 },
    #[error("tree is not in the bijection's domain")]
    NotInDomain,
    #[error("map is not a bijection onto break divisors")]
    NotBijective,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
