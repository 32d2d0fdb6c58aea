use thiserror::Error;

/// Errors surfaced by the library. Invariant violations that can only come
/// from a bug are asserted instead.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term and cannot be inverted")]
    SingularSeries,

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("invalid Hodge profile: {0}")]
    InvalidProfile(String),

    #[error("partition weight {weight} exceeds q-1 = {max}")]
    WeightTooLarge { weight: usize, max: usize },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("module axiom violated at piece {piece}: e_{i}*e_{j} {kind}")]
    ModuleAxiom {
        i: usize,
        j: usize,
        piece: usize,
        kind: &'static str,
    },

    #[error("Betti numbers via the Hilbert polynomial need regularity 0, got {0}")]
    NotLinear(usize),

    #[error("empty sample set")]
    EmptySample,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
