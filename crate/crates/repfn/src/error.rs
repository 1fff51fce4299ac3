use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element does not fit inside the declared universe bound.
    #[error("element {element} exceeds the universe bound {bound}")]
    OutOfRange { element: u64, bound: u64 },

    /// A universe bound beyond what the dense representation accepts.
    #[error("universe bound {bound} exceeds the supported maximum {max}")]
    BoundTooLarge { bound: u64, max: u64 },

    /// Malformed canonical text form of a set.
    #[error("invalid set literal: {0}")]
    SetParse(String),

    /// Thue-Morse prefix level outside `1..=24`.
    #[error("invalid prefix level {0} (expected 1..=24)")]
    InvalidLevel(u32),

    /// Digit-chain classification needs an input of at least 2.
    #[error("invalid input {0}: digit-chain classification needs M >= 2")]
    InvalidInput(u64),

    /// The doubling step was given an offset that collides with a cross
    /// difference of the two sets, so the step's guarantee is void.
    #[error(
        "offset {offset} is the difference {minuend} - {subtrahend} across the pair, \
         so the doubling step does not apply"
    )]
    OffsetCollision {
        offset: u64,
        minuend: u64,
        subtrahend: u64,
    },

    /// A malformed intersection prescription.
    #[error("invalid progression spec: {0}")]
    InvalidSpec(String),

    /// An instance handed to the identity checker violates its contract.
    #[error("invalid identity instance: {0}")]
    InvalidInstance(String),
}
