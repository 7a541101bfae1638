//! Finite p-group engine over power-commutator presentations, with a
//! Beauville-structure analyzer for metabelian thin p-groups.

pub mod beauville;
pub mod catalog;
pub mod congruence;
pub mod error;
pub mod pc;
pub mod structure;

pub use error::{Error, Result};
pub use pc::{GroupElement, PcGroup, PcPresentation};
