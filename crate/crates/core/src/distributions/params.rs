use serde::{Deserialize, Serialize};

use crate::error::ensure_domain;
use crate::Result;

/// The two strictly stable shapes that are sampled: θ = 0 and θ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StableKind {
    Symmetric,
    OneSided,
}

/// Strictly stable law with characteristic exponent `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    pub alpha: f64,
    pub theta: StableKind,
}

impl StableParams {
    pub fn symmetric(alpha: f64) -> Result<Self> {
        Self { alpha, theta: StableKind::Symmetric }.validated()
    }

    pub fn one_sided(alpha: f64) -> Result<Self> {
        Self { alpha, theta: StableKind::OneSided }.validated()
    }

    pub fn validate(&self) -> Result<()> {
        match self.theta {
            StableKind::Symmetric => check_alpha(self.alpha),
            StableKind::OneSided => check_unit_index("alpha", self.alpha),
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }
}

/// Gamma law with shape `r` and rate `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaParams {
    pub r: f64,
    pub lambda: f64,
}

impl GammaParams {
    pub fn new(r: f64, lambda: f64) -> Result<Self> {
        let p = Self { r, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("r", self.r)?;
        check_positive("lambda", self.lambda)
    }
}

/// Generalized gamma law: the `1/alpha` power of a gamma `(r, lambda)` variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GGParams {
    pub r: f64,
    pub alpha: f64,
    pub lambda: f64,
}

impl GGParams {
    pub fn new(r: f64, alpha: f64, lambda: f64) -> Result<Self> {
        let p = Self { r, alpha, lambda };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("r", self.r)?;
        ensure_domain!(
            self.alpha != 0.0 && self.alpha.is_finite(),
            "alpha must be a non-zero real, got {}",
            self.alpha
        );
        check_positive("lambda", self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeibullParams {
    pub gamma: f64,
}

impl WeibullParams {
    pub fn new(gamma: f64) -> Result<Self> {
        check_positive("gamma", gamma)?;
        Ok(Self { gamma })
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("gamma", self.gamma)
    }
}

/// Generalized Mittag-Leffler law with Laplace transform `(1 + s^delta)^(-nu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MLParams {
    pub delta: f64,
    pub nu: f64,
}

impl MLParams {
    pub fn new(delta: f64, nu: f64) -> Result<Self> {
        let p = Self { delta, nu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_unit_index("delta", self.delta)?;
        check_positive("nu", self.nu)
    }
}

/// Symmetric generalized Linnik law with characteristic function `(1 + |t|^alpha)^(-nu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinnikParams {
    pub alpha: f64,
    pub nu: f64,
}

impl LinnikParams {
    pub fn new(alpha: f64, nu: f64) -> Result<Self> {
        let p = Self { alpha, nu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_positive("nu", self.nu)
    }
}

/// Negative binomial law on `{1, 2, ...}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegBinParams {
    pub nu: f64,
    pub p: f64,
}

impl NegBinParams {
    pub fn new(nu: f64, p: f64) -> Result<Self> {
        let q = Self { nu, p };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("nu", self.nu)?;
        ensure_domain!(self.p > 0.0 && self.p < 1.0, "p must lie in (0, 1), got {}", self.p);
        Ok(())
    }
}

/// Gleser's mixing variable `mu (G_r + G_{1-r}) / G_r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZParams {
    pub r: f64,
    pub mu: f64,
}

impl ZParams {
    pub fn new(r: f64, mu: f64) -> Result<Self> {
        let p = Self { r, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_domain!(self.r > 0.0 && self.r < 1.0, "r must lie in (0, 1), got {}", self.r);
        check_positive("mu", self.mu)
    }
}

pub(crate) fn check_positive(name: &str, v: f64) -> Result<()> {
    ensure_domain!(v > 0.0 && v.is_finite(), "{name} must be positive, got {v}");
    Ok(())
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    ensure_domain!(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2], got {alpha}");
    Ok(())
}

pub(crate) fn check_unit_index(name: &str, v: f64) -> Result<()> {
    ensure_domain!(v > 0.0 && v <= 1.0, "{name} must lie in (0, 1], got {v}");
    Ok(())
}

pub(crate) fn check_open_unit_index(name: &str, v: f64) -> Result<()> {
    ensure_domain!(v > 0.0 && v < 1.0, "{name} must lie in (0, 1), got {v}");
    Ok(())
}
