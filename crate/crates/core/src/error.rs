use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid vertex: {0}")]
    InvalidVertex(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("construction failure: {0}")]
    ConstructionFailure(String),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("assembly failure: {0}")]
    AssemblyFailure(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("tracking ambiguity at step {0}")]
    TrackingAmbiguity(usize),
    #[error("cycle has no separated configuration")]
    NoSeparatedState,
}

pub type Result<T> = std::result::Result<T, Error>;
