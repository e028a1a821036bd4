//! Closed-form densities of the mixing laws.

use std::f64::consts::PI;

use super::gamma::{gamma_pos, ln_gamma};
use crate::error::ensure_domain;
use crate::Result;

fn check_ratio_index(delta: f64) -> Result<()> {
    ensure_domain!(
        delta > 0.0 && delta < 1.0,
        "stable ratio index must lie in (0, 1), got {delta} (R_1 is the constant 1)"
    );
    Ok(())
}

/// Density of the ratio R_δ of two independent one-sided δ-stable variables:
/// `sin(πδ) x^(δ-1) / (π [1 + x^(2δ) + 2 x^δ cos(πδ)])`.
pub fn stable_ratio_density(delta: f64, x: f64) -> Result<f64> {
    check_ratio_index(delta)?;
    ensure_domain!(x > 0.0, "stable ratio density needs x > 0, got {x}");
    let (s, c) = (PI * delta).sin_cos();
    let xd = x.powf(delta);
    Ok(s * xd / x / (PI * (1.0 + xd * xd + 2.0 * xd * c)))
}

/// Distribution function of R_δ, `(atan((x^δ + cos πδ) / sin πδ) - (π/2 - πδ)) / (πδ)`.
pub fn stable_ratio_cdf(delta: f64, x: f64) -> Result<f64> {
    check_ratio_index(delta)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    let (s, c) = (PI * delta).sin_cos();
    let lower = (c / s).atan();
    let v = (((x.powf(delta) + c) / s).atan() - lower) / (PI * delta);
    Ok(v.clamp(0.0, 1.0))
}

/// Generalized gamma density `|α| λ^r x^(αr-1) e^(-λ x^α) / Γ(r)`.
pub fn gg_density(r: f64, alpha: f64, lambda: f64, x: f64) -> Result<f64> {
    ensure_domain!(r > 0.0, "GG shape r must be positive, got {r}");
    ensure_domain!(alpha != 0.0 && alpha.is_finite(), "GG power alpha must be non-zero, got {alpha}");
    ensure_domain!(lambda > 0.0, "GG rate lambda must be positive, got {lambda}");
    ensure_domain!(x > 0.0, "GG density needs x > 0, got {x}");
    let ln = alpha.abs().ln() + r * lambda.ln() + (alpha * r - 1.0) * x.ln()
        - lambda * x.powf(alpha)
        - ln_gamma(r);
    Ok(ln.exp())
}

/// Gleser's mixing density
/// `μ^r / (Γ(1-r) Γ(r)) · 1(z ≥ μ) / ((z - μ)^r z)`; zero for `z <= μ`.
pub fn gleser_mixing_density(r: f64, mu: f64, z: f64) -> Result<f64> {
    ensure_domain!(r > 0.0 && r < 1.0, "Gleser shape r must lie in (0, 1), got {r}");
    ensure_domain!(mu > 0.0, "Gleser scale mu must be positive, got {mu}");
    if z <= mu {
        return Ok(0.0);
    }
    let norm = mu.powf(r) / (gamma_pos(1.0 - r) * gamma_pos(r));
    Ok(norm / ((z - mu).powf(r) * z))
}

/// Snedecor–Fisher density of V_{1-r,r}:
/// `(1-r)^(1-r) r^r / (Γ(1-r) Γ(r)) · 1 / (x^r [r + (1-r) x])`.
pub fn snedecor_fisher_density(r: f64, x: f64) -> Result<f64> {
    ensure_domain!(r > 0.0 && r < 1.0, "Snedecor-Fisher shape r must lie in (0, 1), got {r}");
    ensure_domain!(x > 0.0, "Snedecor-Fisher density needs x > 0, got {x}");
    let norm = (1.0 - r).powf(1.0 - r) * r.powf(r) / (gamma_pos(1.0 - r) * gamma_pos(r));
    Ok(norm / (x.powf(r) * (r + (1.0 - r) * x)))
}

/// Distribution function of the standard Laplace law with density `½e^(-|x|)`.
pub fn laplace_cdf(x: f64) -> f64 {
    if x < 0.0 {
        0.5 * x.exp()
    } else {
        1.0 - 0.5 * (-x).exp()
    }
}
