//! Exact modular identities and the `p`-th power congruences of metabelian
//! thin groups.

mod formulas;
mod quadratic;

pub use formulas::{
    binomial_table, cij, cij_closed_form_check, cij_generating_function_check, cij_mod, formula_table,
    geometric_sum_check, quadratic_nonresidues, IdentityReport,
};
pub use quadratic::{CollisionReport, QuadraticPairCertificate};
