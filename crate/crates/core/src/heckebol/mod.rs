//! Hecke operators on q-expansions, weak eigenform defects, canonical
//! representatives modulo the Bol image, and the constant `alpha`.

mod canonical;
mod eigen;
mod hecke;

pub use canonical::{
    canonical_representative, canonical_representative_bounded, dim_cusp_forms,
    dim_modular_forms, modular_bol_preimage, negative_weight_basis, DEFAULT_POLE_BOUND,
};
pub use eigen::{
    alpha_constant, alpha_for_eigenform, consistency_psi, eigen_defect, psi_normalization,
    AlphaValue, EigenDefect, HeckeEigenData,
};
pub use hecke::{hecke_qexp, hecke_qexp_to};
