//! Per-variate generators.
//!
//! Each family is drawn through one of its mixture representations, built
//! from a handful of primitives: the standard normal, the standard
//! exponential, gamma variables and the two strictly stable shapes.

use std::f64::consts::{PI, SQRT_2};

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, Poisson, StandardNormal};

use super::params::*;
use super::spec::{DistSpec, GenLinnikMethod, LinnikMethod, MlMethod};
use crate::{Error, Result};

#[inline]
pub(crate) fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

#[inline]
pub(crate) fn exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Exp1.sample(rng)
}

#[inline]
fn laplace<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let e = exponential(rng);
    if rng.random::<bool>() {
        e
    } else {
        -e
    }
}

/// Symmetric strictly stable variable with characteristic function `e^(-|t|^alpha)`,
/// by the Chambers–Mallows–Stuck transform with zero skewness.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SymmetricStable {
    alpha: f64,
}

impl SymmetricStable {
    pub(crate) fn new(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Self { alpha })
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let a = self.alpha;
        if a == 2.0 {
            return SQRT_2 * normal(rng);
        }
        let u = PI * (rng.random::<f64>() - 0.5);
        if a == 1.0 {
            return u.tan();
        }
        let w = exponential(rng);
        (a * u).sin() / u.cos().powf(1.0 / a) * (((1.0 - a) * u).cos() / w).powf((1.0 - a) / a)
    }
}

/// One-sided strictly stable variable with Laplace transform `e^(-s^alpha)`,
/// by Kanter's representation. At `alpha = 1` it is the constant 1.
#[derive(Debug, Clone, Copy)]
pub(crate) struct OneSidedStable {
    alpha: f64,
}

impl OneSidedStable {
    pub(crate) fn new(alpha: f64) -> Result<Self> {
        check_unit_index("alpha", alpha)?;
        Ok(Self { alpha })
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let a = self.alpha;
        if a == 1.0 {
            return 1.0;
        }
        // U uniform on (0, π); the open interval keeps sin(U) away from 0.
        let u = PI * open01(rng);
        let w = exponential(rng);
        (a * u).sin() / u.sin().powf(1.0 / a) * (((1.0 - a) * u).sin() / w).powf((1.0 - a) / a)
    }
}

#[inline]
fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Gamma `(r, rate lambda)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GammaDraw(Gamma<f64>);

impl GammaDraw {
    pub(crate) fn new(r: f64, lambda: f64) -> Result<Self> {
        GammaParams::new(r, lambda)?;
        Gamma::new(r, 1.0 / lambda)
            .map(GammaDraw)
            .map_err(|e| Error::Domain(format!("gamma({r}, {lambda}): {e}")))
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.0.sample(rng)
    }
}

/// Generalized Mittag-Leffler: `S_{delta,1} · G_{nu,1}^(1/delta)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GenMl {
    stable: OneSidedStable,
    gamma: GammaDraw,
    inv_delta: f64,
}

impl GenMl {
    pub(crate) fn new(delta: f64, nu: f64) -> Result<Self> {
        MLParams::new(delta, nu)?;
        Ok(Self {
            stable: OneSidedStable::new(delta)?,
            gamma: GammaDraw::new(nu, 1.0)?,
            inv_delta: 1.0 / delta,
        })
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.stable.draw(rng) * self.gamma.draw(rng).powf(self.inv_delta)
    }
}

/// Ordinary Mittag-Leffler by either route.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Ml {
    stable: OneSidedStable,
    delta: f64,
    method: MlMethod,
}

impl Ml {
    pub(crate) fn new(delta: f64, method: MlMethod) -> Result<Self> {
        Ok(Self { stable: OneSidedStable::new(delta)?, delta, method })
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.method {
            // M ≐ S_{δ,1} · W_1^(1/δ)
            MlMethod::StableWeibull => self.stable.draw(rng) * exponential(rng).powf(1.0 / self.delta),
            // M ≐ W_1 · S_{δ,1} / S'_{δ,1}
            MlMethod::ExpRatio => {
                let s = self.stable.draw(rng);
                let s2 = self.stable.draw(rng);
                exponential(rng) * s / s2
            }
        }
    }
}

/// Ordinary Linnik by any of its routes.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Linnik {
    alpha: f64,
    method: LinnikMethod,
    stable: Option<SymmetricStable>,
    half: Option<OneSidedStable>,
}

impl Linnik {
    pub(crate) fn new(alpha: f64, method: LinnikMethod) -> Result<Self> {
        DistSpec::Linnik { alpha, method }.validate()?;
        let (stable, half) = match method {
            LinnikMethod::StableWeibull => (Some(SymmetricStable::new(alpha)?), None),
            LinnikMethod::NormalMl | LinnikMethod::LaplaceRatio => (None, Some(OneSidedStable::new(alpha / 2.0)?)),
        };
        Ok(Self { alpha, method, stable, half })
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.method {
            // L ≐ S_{α,0} · W_1^(1/α)
            LinnikMethod::StableWeibull => {
                self.stable.unwrap().draw(rng) * exponential(rng).powf(1.0 / self.alpha)
            }
            // L ≐ X · √(2 M_{α/2}), M via S_{α/2,1} · W_1^(2/α)
            LinnikMethod::NormalMl => {
                let m = self.half.unwrap().draw(rng) * exponential(rng).powf(2.0 / self.alpha);
                normal(rng) * (2.0 * m).sqrt()
            }
            // L ≐ Λ · √(S_{α/2,1} / S'_{α/2,1})
            LinnikMethod::LaplaceRatio => {
                let h = self.half.unwrap();
                let r = h.draw(rng) / h.draw(rng);
                laplace(rng) * r.sqrt()
            }
        }
    }
}

/// Generalized Linnik by any of its routes.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GenLinnik {
    alpha: f64,
    method: GenLinnikMethod,
    stable: SymmetricStable,
    gamma: GammaDraw,
    genml: Option<GenMl>,
    linnik: Option<Linnik>,
    z: Option<ZDraw>,
}

impl GenLinnik {
    pub(crate) fn new(alpha: f64, nu: f64, method: GenLinnikMethod) -> Result<Self> {
        DistSpec::GenLinnik { alpha, nu, method }.validate()?;
        let mut me = Self {
            alpha,
            method,
            stable: SymmetricStable::new(alpha)?,
            gamma: GammaDraw::new(nu, 1.0)?,
            genml: None,
            linnik: None,
            z: None,
        };
        match method {
            GenLinnikMethod::StableGamma => {}
            GenLinnikMethod::NormalGenMl => me.genml = Some(GenMl::new(alpha / 2.0, nu)?),
            GenLinnikMethod::LinnikZ => {
                me.linnik = Some(Linnik::new(alpha, LinnikMethod::NormalMl)?);
                if nu < 1.0 {
                    me.z = Some(ZDraw::new(nu, 1.0)?);
                }
            }
            GenLinnikMethod::StableGenMl => {
                let a = Self::outer_index(alpha);
                me.stable = SymmetricStable::new(a)?;
                me.genml = Some(GenMl::new(alpha / a, nu)?);
            }
        }
        Ok(me)
    }

    /// Outer stable index `a` in `L_{α,ν} ≐ S_{a,0} · M_{α/a,ν}^(1/a)`; any
    /// `a ∈ [α, 2]` works, the midpoint keeps both factors non-degenerate.
    pub(crate) fn outer_index(alpha: f64) -> f64 {
        0.5 * (alpha + 2.0)
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.method {
            GenLinnikMethod::StableGamma => {
                self.stable.draw(rng) * self.gamma.draw(rng).powf(1.0 / self.alpha)
            }
            GenLinnikMethod::NormalGenMl => {
                let m = self.genml.unwrap().draw(rng);
                normal(rng) * (2.0 * m).sqrt()
            }
            GenLinnikMethod::LinnikZ => {
                let l = self.linnik.unwrap().draw(rng);
                match self.z {
                    Some(z) => l * z.draw(rng).powf(-1.0 / self.alpha),
                    // Z_{1,1} is the constant 1.
                    None => l,
                }
            }
            GenLinnikMethod::StableGenMl => {
                let a = Self::outer_index(self.alpha);
                self.stable.draw(rng) * self.genml.unwrap().draw(rng).powf(1.0 / a)
            }
        }
    }
}

/// `mu (G_r + G_{1-r}) / G_r`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ZDraw {
    g: GammaDraw,
    g_bar: GammaDraw,
    mu: f64,
}

impl ZDraw {
    pub(crate) fn new(r: f64, mu: f64) -> Result<Self> {
        ZParams::new(r, mu)?;
        Ok(Self { g: GammaDraw::new(r, 1.0)?, g_bar: GammaDraw::new(1.0 - r, 1.0)?, mu })
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let a = self.g.draw(rng);
        let b = self.g_bar.draw(rng);
        self.mu * (a + b) / a
    }
}

/// Negative binomial on `{1, 2, ...}` as `1 + Poisson(G_{nu} (1-p)/p)`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct NegBinDraw {
    gamma: GammaDraw,
}

impl NegBinDraw {
    pub(crate) fn new(nu: f64, p: f64) -> Result<Self> {
        NegBinParams::new(nu, p)?;
        Ok(Self { gamma: GammaDraw::new(nu, p / (1.0 - p))? })
    }

    #[inline]
    pub(crate) fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        1.0 + poisson(self.gamma.draw(rng), rng)
    }
}

/// Poisson variate with mean `lambda`; zero mean gives zero.
#[inline]
pub(crate) fn poisson<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> f64 {
    if lambda <= 0.0 {
        return 0.0;
    }
    match Poisson::new(lambda) {
        Ok(p) => p.sample(rng),
        // Beyond the sampler's range the normal approximation is exact to
        // far better than double precision relative to the mean.
        Err(_) => (lambda + lambda.sqrt() * normal(rng)).round().max(0.0),
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    Normal,
    Laplace,
    Exponential,
    Weibull(f64),
    Gamma(GammaDraw),
    GenGamma(GammaDraw, f64),
    ExpPower(GammaDraw, f64),
    NegBinom(NegBinDraw),
    SymStable(SymmetricStable),
    OneSided(OneSidedStable),
    StableRatio(OneSidedStable),
    Z(ZDraw),
    Ml(Ml),
    GenMl(GenMl),
    Linnik(Linnik),
    GenLinnik(GenLinnik),
}

/// A validated, ready-to-draw generator for one [`DistSpec`].
#[derive(Debug, Clone, Copy)]
pub struct Sampler {
    spec: DistSpec,
    kind: Kind,
}

impl Sampler {
    pub fn new(spec: &DistSpec) -> Result<Self> {
        spec.validate()?;
        let kind = match *spec {
            DistSpec::Normal => Kind::Normal,
            DistSpec::Laplace => Kind::Laplace,
            DistSpec::Exponential => Kind::Exponential,
            DistSpec::Weibull(p) => Kind::Weibull(1.0 / p.gamma),
            DistSpec::Gamma(p) => Kind::Gamma(GammaDraw::new(p.r, p.lambda)?),
            DistSpec::GenGamma(p) => Kind::GenGamma(GammaDraw::new(p.r, p.lambda)?, 1.0 / p.alpha),
            DistSpec::ExpPower { nu } => Kind::ExpPower(GammaDraw::new(nu, 1.0)?, nu),
            DistSpec::NegBinom(p) => Kind::NegBinom(NegBinDraw::new(p.nu, p.p)?),
            DistSpec::Stable(p) => match p.theta {
                StableKind::Symmetric => Kind::SymStable(SymmetricStable::new(p.alpha)?),
                StableKind::OneSided => Kind::OneSided(OneSidedStable::new(p.alpha)?),
            },
            DistSpec::StableRatio { delta } => Kind::StableRatio(OneSidedStable::new(delta)?),
            DistSpec::ZMix(p) => Kind::Z(ZDraw::new(p.r, p.mu)?),
            DistSpec::MittagLeffler { delta, method } => Kind::Ml(Ml::new(delta, method)?),
            DistSpec::GenMittagLeffler(p) => Kind::GenMl(GenMl::new(p.delta, p.nu)?),
            DistSpec::Linnik { alpha, method } => Kind::Linnik(Linnik::new(alpha, method)?),
            DistSpec::GenLinnik { alpha, nu, method } => Kind::GenLinnik(GenLinnik::new(alpha, nu, method)?),
        };
        Ok(Self { spec: *spec, kind })
    }

    pub fn spec(&self) -> &DistSpec {
        &self.spec
    }

    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            Kind::Normal => normal(rng),
            Kind::Laplace => laplace(rng),
            Kind::Exponential => exponential(rng),
            Kind::Weibull(inv_gamma) => exponential(rng).powf(*inv_gamma),
            Kind::Gamma(g) => g.draw(rng),
            Kind::GenGamma(g, inv_alpha) => g.draw(rng).powf(*inv_alpha),
            Kind::ExpPower(g, nu) => g.draw(rng).powf(*nu),
            Kind::NegBinom(nb) => nb.draw(rng),
            Kind::SymStable(s) => s.draw(rng),
            Kind::OneSided(s) => s.draw(rng),
            Kind::StableRatio(s) => s.draw(rng) / s.draw(rng),
            Kind::Z(z) => z.draw(rng),
            Kind::Ml(m) => m.draw(rng),
            Kind::GenMl(m) => m.draw(rng),
            Kind::Linnik(l) => l.draw(rng),
            Kind::GenLinnik(l) => l.draw(rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::RandomStream;

    #[test]
    fn boundary_shortcuts() {
        let mut rng = RandomStream::new(1, 0).rng();
        let s = OneSidedStable::new(1.0).unwrap();
        assert!((0..10).all(|_| s.draw(&mut rng) == 1.0));
        let z = GenLinnik::new(1.3, 1.0, GenLinnikMethod::LinnikZ).unwrap();
        assert!(z.z.is_none());
    }

    #[test]
    fn outer_index_keeps_inner_index_in_range() {
        for &a in &[0.1, 1.0, 1.9, 2.0] {
            let o = GenLinnik::outer_index(a);
            assert!(o >= a && o <= 2.0 && a / o <= 1.0);
        }
    }

    #[test]
    fn poisson_handles_edges() {
        let mut rng = RandomStream::new(2, 0).rng();
        assert_eq!(poisson(0.0, &mut rng), 0.0);
        let big = poisson(1e20, &mut rng);
        assert!((big / 1e20 - 1.0).abs() < 1e-6);
    }
}
