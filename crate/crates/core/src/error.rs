use crate::tree::Vertex;

/// Errors produced by the tree, resolution, transformation and search layers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TmdError {
    #[error("vertex {vertex} is out of range for a tree on {n} vertices")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("a tree needs at least one vertex")]
    EmptyTree,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} closes a cycle")]
    Cycle(Vertex, Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("threshold k must be at least 1")]
    InvalidThreshold,
    #[error("sensor {0} listed twice")]
    DuplicateSensor(Vertex),
    #[error("vertex {0} is not a sensor")]
    NotASensor(Vertex),
    #[error("sensor subset must be nonempty")]
    EmptySubset,
    #[error("vertex {vertex} coincides with an endpoint of the sensor pair")]
    EndpointVertex { vertex: Vertex },
    #[error("sensor pair endpoints must be distinct")]
    DegeneratePair,
    #[error("sensor set is not resolving: {0}")]
    NotResolving(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("plan was computed for a different tree")]
    PlanMismatch,
    #[error("transformation produced an invalid tree: {0}")]
    InvalidRewrite(String),

    #[error("{what} = {value} exceeds the supported range {limit}")]
    Guard { what: &'static str, value: usize, limit: String },
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("bound violated: {0}")]
    BoundViolation(String),
}

pub type Result<T, E = TmdError> = std::result::Result<T, E>;
