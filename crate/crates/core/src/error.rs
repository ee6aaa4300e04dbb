use thiserror::Error;

/// Errors raised by the section kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToricError {
    /// A parameter violates one of the documented invariants. The message
    /// names the violated invariant.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("horizontal-plane parametrization unavailable (|cos phi| < 1e-12)")]
    HorizontalPlane,

    #[error("bridge undefined for horizontal plane")]
    BridgeUndefined,

    #[error("not a Cassini configuration (class {0})")]
    NotCassini(String),

    #[error("not a Villarceau configuration (class {0})")]
    NotVillarceau(String),

    #[error("component count {0} != 2")]
    ComponentCount(usize),

    #[error("invalid document: {0}")]
    InvalidDocument(String),
}

pub type Result<T, E = ToricError> = std::result::Result<T, E>;
