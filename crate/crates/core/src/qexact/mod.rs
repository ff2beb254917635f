//! Truncated Laurent series in `q` with exact rational coefficients, and the
//! level-one forms built from them.

mod forms;
mod json;
mod ops;
mod series;

pub use forms::{
    delta, delta_from_eisenstein, delta_prime, delta_prime_with_constants, eisenstein,
    eisenstein_monomial, eisenstein_normalized, j_invariant,
};
pub use json::parse_rational;
pub use ops::{bol, bol_inverse, iterated_primitive, pairing};
pub use series::QLaurent;
