use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),

    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),

    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),

    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("operands live in different polynomial rings")]
    RingMismatch,

    #[error("exponent overflow: {0}")]
    Overflow(String),

    #[error("invalid term order: {0}")]
    InvalidOrder(String),

    #[error("resource limit exceeded: {0}")]
    ResourceExceeded(String),

    #[error("{0} is not a power of the characteristic {1}")]
    NotCharacteristicPower(u64, u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant breached: {0}")]
    Internal(String),

    #[error("unit ideal has no dimension")]
    UnitIdeal,

    #[error("serialization: {0}")]
    Serialization(String),
}

impl AlgebraError {
    pub fn precondition(msg: impl Into<String>) -> Self {
        AlgebraError::Precondition(msg.into())
    }

    /// True for the distinct "gave up" status of the Groebner engine.
    pub fn is_resource_exceeded(&self) -> bool {
        matches!(self, AlgebraError::ResourceExceeded(_))
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
