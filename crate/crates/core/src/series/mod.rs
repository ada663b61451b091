//! Ramanujan-type series for `1/pi`: coefficient families, the catalog,
//! series built from singular data, and their evaluation.

mod binsplit;
mod builder;
mod catalog;
mod elementary;
mod eval;
mod family;
mod spec;

pub use binsplit::{evaluate_binary_splitting, terms_for_digits};
pub use builder::{build_series, normalize, reciprocal_pi_identity_check, FamilyTag, Normalized};
pub use catalog::{catalog, catalog_keys, lookup};
pub use elementary::{estimated_terms_log10, evaluate as evaluate_elementary};
pub use eval::{
    evaluate_direct, evaluate_terms, measured_digits_per_term, EvaluationReport, MAX_DIRECT_TERMS,
};
pub use family::{chan_cooper_scaled, pochhammer_forms, CoefficientFamily, Coefficients};
pub use spec::{digits_per_term, Pattern, Provenance, Scalar, SeriesSpec, Target};
