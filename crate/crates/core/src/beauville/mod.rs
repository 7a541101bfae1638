//! Beauville structures: the `Sigma` criterion, search, refutation,
//! Catanese's criterion, lifting and the case classifier.

mod criteria;
mod search;
mod sigma;

pub(crate) use sigma::ser_elem;

pub use criteria::{brute_force_abelian, catanese_check, CaseTag, TheoremACase};
pub use search::{BeauvilleCertificate, Outcome, RefutationReason, SearchMode, SearchStats};
pub use sigma::{GeneratingTriple, SigmaFingerprint};
