use thiserror::Error;

use crate::rootsys::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KrError {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("node {node} out of range 1..={rank}")]
    InvalidNode { node: usize, rank: usize },

    #[error("level {level} out of range: {reason}")]
    InvalidLevel { level: usize, reason: String },

    #[error("weight {0} has length {1}, expected {2}")]
    WeightLength(Weight, usize, usize),

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("element is not in the root lattice: {0}")]
    NotInRootLattice(String),

    #[error("weight {weight} is not in the set P+({node},{level})")]
    NotInSet { weight: Weight, node: usize, level: usize },

    #[error("not a genuine character: stripping {weight} left multiplicity {mult}")]
    NotACharacter { weight: Weight, mult: i64 },

    #[error("chain conditions violated between {first} and {second}: {condition}")]
    ChainViolation { first: Weight, second: Weight, condition: String },

    #[error("dimension guard: {what} needs {needed} > {limit} (set KR_MAX_DIM to raise)")]
    DimensionGuard { what: String, needed: u64, limit: u64 },

    #[error("highest weight {0} is outside the matrix-realisation scope (spin-supported)")]
    OutsideModforgeScope(Weight),

    #[error("intertwiner space {what} has dimension {dim}, expected exactly 1")]
    IntertwinerDimension { what: String, dim: usize },

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("theorem check failed: {0}")]
    TheoremCheck(String),

    #[error("cannot parse algebra spec {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, KrError>;
