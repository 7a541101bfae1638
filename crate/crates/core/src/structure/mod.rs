//! Subgroups, central series, power structure and the thin-group predicates.

pub(crate) mod cache;
pub mod census;
pub mod frattini;
pub(crate) mod linalg;
pub mod lattice;
pub mod place;
pub mod quotient;
pub mod series;
pub mod subgroup;
pub mod thin;

pub use census::Census;
pub use frattini::MaximalSubgroup;
pub use lattice::{LatticeProfile, LayerProfile, LayerShape};
pub use place::PlaceOfAgemoReport;
pub use quotient::Quotient;
pub use series::CentralSeries;
pub use subgroup::Subgroup;
pub use thin::{ThinReport, ThinWitness};
