//! Real analytic expansions `sum L^k a_(k,m,n) q^m qbar^n` with exact
//! symbolic coefficients, the operators acting on them, the families
//! `H(f)_(r,s)` and `E_(r,s)`, and numerical evaluation.

mod build;
mod eval;
mod expansion;
mod verify;

pub use build::{
    build_e, build_h, build_h_family, build_r, build_r_symbolic, build_x, e_constant_part, eisenstein_expansion,
    g2_star, HInputs,
};
pub use eval::{evaluate, modularity_check, symbol_values, Evaluation, ModularityResidual, EVAL_Y_MIN};
pub use expansion::{sigma_rational, BiExpansion, Key};
pub use verify::{
    bol_checks, eisenstein_checks, g2_star_checks, hecke_relation_checks, kernel_checks, ladder_checks,
    laplacian_checks, operator_identity_checks, random_expansion, shape_checks, verify_all,
    verify_hecke_inhomogeneous, Check, VerifyOptions, VerifyReport,
};
