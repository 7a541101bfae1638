//! Power-commutator presentations and arithmetic in the groups they define.
//!
//! Commutators follow `[a,b] = a^-1 b^-1 a b`, extended left-normed:
//! `[a,b,c] = [[a,b],c]`.

pub(crate) mod collector;
pub mod element;
pub mod group;
pub mod presentation;

/// Largest supported number of pc generators.
pub const MAX_RANK: usize = 32;

pub use element::GroupElement;
pub use group::{check_consistency, ConsistencyFailure, ConsistencyReport, PcGroup, RelationKind, DEFAULT_BUDGET};
pub use presentation::{PcPresentation, Word};
