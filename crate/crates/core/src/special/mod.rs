//! Scalar special functions, closed-form densities and transforms, and
//! numeric inversion of the generalized Linnik characteristic function.
//!
//! Everything here is a pure function of its arguments.

mod densities;
mod gamma;
mod inversion;
mod mittag_leffler;
pub mod quad;
mod transforms;

pub use densities::{
    gg_density, gleser_mixing_density, laplace_cdf, snedecor_fisher_density, stable_ratio_cdf,
    stable_ratio_density,
};
pub use gamma::{gamma_fn, gamma_p, ln_gamma, normal_cdf};
pub use inversion::{cdf_by_inversion, pdf_by_inversion, InversionCdfTable};
pub use mittag_leffler::{
    ml_cdf, ml_density, ml_density_with, mittag_leffler, mittag_leffler_with,
};
pub use transforms::{genlinnik_cf, genml_lst, stable_one_sided_lst, stable_symmetric_cf};

use crate::error::ensure_domain;
use crate::Result;

/// Accuracy targets for series and quadrature based evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    /// Absolute error target.
    pub abs_tol: f64,
    /// Maximum number of series terms.
    pub max_terms: usize,
    /// Maximum number of adaptive quadrature subintervals.
    pub quad_limit: usize,
}

impl Accuracy {
    pub fn new(abs_tol: f64, max_terms: usize, quad_limit: usize) -> Result<Self> {
        ensure_domain!(abs_tol > 0.0, "abs_tol must be positive, got {abs_tol}");
        ensure_domain!(max_terms >= 1, "max_terms must be at least 1");
        ensure_domain!(quad_limit >= 1, "quad_limit must be at least 1");
        Ok(Self { abs_tol, max_terms, quad_limit })
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        Self { abs_tol: 1e-13, max_terms: 20_000, quad_limit: 400 }
    }
}

/// Truncation and panel budget for the oscillatory inversion integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionGrid {
    /// Upper truncation point of the frequency integral.
    pub t_max: f64,
    /// Maximum number of half-period panels that may be summed.
    pub panels: usize,
}

impl InversionGrid {
    pub fn new(t_max: f64, panels: usize) -> Result<Self> {
        ensure_domain!(t_max > 0.0, "t_max must be positive, got {t_max}");
        ensure_domain!(panels >= 8, "panels must be at least 8, got {panels}");
        Ok(Self { t_max, panels })
    }

    /// Grid whose truncation point is where `(1 + t^alpha)^(-nu)` drops below 1e-8.
    pub fn for_params(alpha: f64, nu: f64) -> Self {
        let t_max = ((1e8f64).powf(1.0 / nu) - 1.0).powf(1.0 / alpha);
        Self { t_max: t_max.clamp(50.0, 1e300), panels: 20_000 }
    }
}
