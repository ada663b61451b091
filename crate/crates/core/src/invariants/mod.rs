//! Class invariants, singular values, fundamental units and the
//! singular-value table.

mod class;
mod lattice;
mod quadratic;
mod singular;
mod surd;
mod tables;

pub use class::{
    class_invariants, klein_j, klein_j_forms, modulus_from_big_g, modulus_from_small_g, ClassInvariants,
};
pub use lattice::{
    lattice_sum_brute_force, lattice_sum_g, lattice_sum_g_closed_form, lattice_sum_k,
    lattice_sum_k_closed_form, modulus_from_lattice_sums,
};
pub use quadratic::{field_discriminant, fundamental_unit, is_square_free, QuadraticSurd};
pub use singular::{
    alpha, alpha_convergence_bound, alpha_convergence_check, lambda_star, singular_ratio_defect,
};
pub use surd::SurdExpr;
pub use tables::{
    verify_row, verify_tables, Check, InvariantKind, RowReport, SingularData, SingularTable, TableReport,
    UnitEntry, UnitRelation,
};
