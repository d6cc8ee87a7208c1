//! Finite semigroups with zero and the order-theoretic and Green-relation
//! data of inverse semigroups.

mod group;
mod inverse;
mod table;

pub use group::GroupTable;
pub use inverse::{DClass, InverseStructure, SteinbergCoord};
pub use table::{SemigroupTable, MAX_CYCLIC, MAX_MATRIX_UNITS, MAX_SYMMETRIC_INVERSE};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("table is not associative: ({x}·{y})·{z} ≠ {x}·({y}·{z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("zero does not absorb element {0}")]
    ZeroNotAbsorbing(String),
    #[error("{what}({n}) exceeds the size limit (1..={max})")]
    SizeLimit { what: &'static str, n: usize, max: usize },
    #[error("semigroup already has a zero")]
    AlreadyHasZero,
    #[error("semigroup has no zero element; adjoin one first")]
    NoZero,
    #[error("element {0} does not have exactly one generalized inverse")]
    NotInverseSemigroup(String),
    #[error("element {0} is not a nonzero idempotent")]
    NotIdempotent(String),
    #[error("Steinberg coordinates do not belong to one class: {0}")]
    ClassMismatch(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("unknown builtin semigroup reference {0:?}")]
    UnknownBuiltin(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
}

impl SemigroupError {
    /// True for errors that describe a broken algebraic structure rather than
    /// a bad request.
    pub fn is_structural(&self) -> bool {
        matches!(
            self,
            Self::NotAssociative { .. }
                | Self::ZeroNotAbsorbing(_)
                | Self::NotInverseSemigroup(_)
                | Self::InvalidTable(_)
                | Self::NoZero
                | Self::NotAGroup(_)
        )
    }
}
