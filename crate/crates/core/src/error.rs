use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Family/rank combination outside the classical range.
    #[error("invalid rank {rank} for type {family}: {constraint}")]
    InvalidRank {
        family: char,
        rank: usize,
        constraint: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector is not in the root lattice")]
    NotInRootLattice,

    #[error("node set mismatch: {0}")]
    NodeMismatch(String),

    /// The all-uncrossed crossing gives the whole loop algebra.
    #[error("crossing is improper (no node crossed)")]
    ImproperCrossing,

    #[error("invalid multi-degree: {0}")]
    InvalidDegree(String),

    #[error("invalid sheaf label {label} for {family}")]
    InvalidLabel { family: String, label: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `A` is singular, so the bundle is not trivial along `z = 0`.
    #[error("A is singular: data is not trivial along z=0")]
    SingularA,

    /// An identity that must hold for valid input failed; this is a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
