//! Characteristic functions and Laplace transforms with closed forms.

use crate::error::ensure_domain;
use crate::Result;

fn check_alpha(alpha: f64) -> Result<()> {
    ensure_domain!(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2], got {alpha}");
    Ok(())
}

/// Symmetric generalized Linnik characteristic function `(1 + |t|^α)^(-ν)`.
pub fn genlinnik_cf(alpha: f64, nu: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    ensure_domain!(nu > 0.0, "nu must be positive, got {nu}");
    Ok((1.0 + t.abs().powf(alpha)).powf(-nu))
}

/// Generalized Mittag-Leffler Laplace transform `(1 + s^δ)^(-ν)`, `s >= 0`.
pub fn genml_lst(delta: f64, nu: f64, s: f64) -> Result<f64> {
    ensure_domain!(delta > 0.0 && delta <= 1.0, "delta must lie in (0, 1], got {delta}");
    ensure_domain!(nu > 0.0, "nu must be positive, got {nu}");
    ensure_domain!(s >= 0.0, "Laplace argument must be non-negative, got {s}");
    Ok((1.0 + s.powf(delta)).powf(-nu))
}

/// `exp(-|t|^α)`, the symmetric strictly stable characteristic function.
pub fn stable_symmetric_cf(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok((-t.abs().powf(alpha)).exp())
}

/// `exp(-s^α)`, the Laplace transform of the one-sided stable law (`α <= 1`).
pub fn stable_one_sided_lst(alpha: f64, s: f64) -> Result<f64> {
    ensure_domain!(alpha > 0.0 && alpha <= 1.0, "one-sided stable needs alpha in (0, 1], got {alpha}");
    ensure_domain!(s >= 0.0, "Laplace argument must be non-negative, got {s}");
    Ok((-s.powf(alpha)).exp())
}
