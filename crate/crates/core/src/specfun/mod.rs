//! Special-function kernels and quadrature used by the distribution code.

mod bessel;
mod gamma;
mod incbeta;
pub mod quadrature;
mod struve;

pub use bessel::{bessel_j, BESSEL_MAX_ARG, MAX_ORDER};
pub use gamma::{beta, ln_beta, ln_gamma};
pub use incbeta::{inv_reg_inc_beta, reg_inc_beta};
pub use quadrature::{integrate, integrate_with_breakpoints, QuadValue, Quadrature, QuadratureSpec};
pub use struve::{struve_h, STRUVE_MAX_ARG};

#[allow(unused_imports)]
pub(crate) use gamma::{ln_beta_unchecked, ln_gamma_unchecked, stirling_correction, STIRLING_MIN};
#[allow(unused_imports)]
pub(crate) use incbeta::reg_inc_beta_unchecked;
