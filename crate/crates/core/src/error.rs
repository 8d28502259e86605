use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-contract input (bad file, zero normal, proportional normals...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configurable search or enumeration limit was hit.
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// A construction degenerated (e.g. collapsed normals in a formal closure).
    #[error("structural error: {0}")]
    Structural(String),

    /// An implication that must hold between verdicts failed.
    #[error("report invariant violated: {0}")]
    InvariantViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
