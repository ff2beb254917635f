//! The polynomial module `V_n`, numerical Eichler integrals, cocycles of
//! weakly holomorphic forms and the extraction of their periods.

mod eichler;
mod form;
mod linalg;
mod periods;
mod quadrature;
mod vn;

pub use eichler::{eichler_integral, EichlerIntegral, EichlerOptions, SeriesEvaluator};
pub use form::{cocycle_of_form, Cocycle, CocycleOptions, Generator};
pub use linalg::{least_squares, solve};
pub use periods::{
    decompose, extract_periods, period_polynomials_wt12, CocycleDecomposition, PeriodMatrix,
    NONREAL_TOLERANCE, RESIDUAL_TOLERANCE,
};
pub use quadrature::{gauss_legendre, GaussLegendre};
pub use vn::{Coefficient, Mat2, VnPoly};
