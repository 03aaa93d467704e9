use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one rejection class
/// so front ends can report a stable error code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid type label {label:?}: {reason}")]
    InvalidType { label: String, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight {weight} is not dominant")]
    NotDominant { weight: String },

    #[error("level bound violated: k = {k} must exceed the dual Coxeter number g = {g}")]
    LevelBound { k: i64, g: i64 },

    #[error("weight {weight} is not in the level alphabet for k = {k}")]
    OutsideAlphabet { weight: String, k: i64 },

    /// Circles that are not a disjoint nested family on the sphere.
    #[error("circles do not form a disjoint nesting forest: {0}")]
    Assumption(String),

    #[error("malformed link description: {0}")]
    Schema(String),

    #[error("unknown face {0}")]
    UnknownFace(usize),

    #[error("singular torus element: {0}")]
    Singular(String),

    #[error("inputs belong to different structures: {0}")]
    Mismatch(String),

    #[error("mean-value constraint violated: {0}")]
    Constraint(String),

    /// An internal cross-check disagreed. Signals a bug, not bad input.
    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
