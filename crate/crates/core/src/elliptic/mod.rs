//! Complete elliptic integrals, theta functions, the nome map and
//! hypergeometric series, all at arbitrary precision.

mod agm;
mod hypergeometric;
mod modulus;
mod theta;
mod transformations;

pub use agm::{
    agm, d_ellip_e, d_ellip_k, ellip_e, ellip_e_of, ellip_k, ellip_k_of, ellip_ke, legendre_defect, pi_agm,
};
pub use hypergeometric::{hyp_2f1, hyp_3f2};
pub use modulus::Modulus;
pub use theta::{modulus_from_nome, nome, theta, ThetaTriple};
pub use transformations::{check_transformations, IdentityDefect, KRange, Side};
