use thiserror::Error;

/// Errors produced by the toolkit. Every fallible operation returns one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MstdError {
    #[error("the empty set is not a valid operand")]
    EmptySet,

    #[error("duplicate element {0} in set literal")]
    Duplicate(u64),

    #[error("malformed set literal: {0}")]
    Parse(String),

    #[error("element {0} exceeds the supported range (2*max must fit in i64)")]
    ElementTooLarge(u64),

    #[error("diameter {0} exceeds the dense bitset limit of {limit}", limit = crate::sets::MAX_DIAMETER)]
    DiameterTooLarge(u64),

    #[error("set is not normalized (min must be 0 and gcd 1): {0}")]
    NotNormalized(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("unknown catalog name `{0}`")]
    UnknownCatalog(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(String),

    #[error("set is not reducible modulo {0}")]
    NotReducible(u64),

    #[error("embedding collision: {0}")]
    Collision(String),

    #[error("resource cap exceeded: visited more than {0} sets")]
    ResourceCap(u64),
}

pub type Result<T> = std::result::Result<T, MstdError>;
