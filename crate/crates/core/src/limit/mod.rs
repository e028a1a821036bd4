//! Monte-Carlo experiments for random-sum limit theorems with a generalized
//! Linnik (or gamma) limit.
//!
//! Every experiment draws `replications` values of a normalized random sum
//! at each grid point and reports the one-sample KS distance to the limit
//! law. Grid points share random numbers: replication `j` uses the same
//! mixing variable at every `n`, so the distances along the grid move
//! smoothly instead of jumping with independent noise.
//!
//! Three separate streams feed each chunk of replications: one for the
//! mixing variable of the index, one for the discrete (Poisson, binomial)
//! parts, one for the continuous summand draws.

mod report;

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Gamma};
use serde::{Deserialize, Serialize};

pub use report::{ConvergenceReport, ConvergenceRow};

use crate::distributions::{chunked, normal, poisson, DistSpec, RandomStream, Sampler};
use crate::error::ensure_domain;
use crate::special::{gamma_p, laplace_cdf, normal_cdf, InversionCdfTable};
use crate::{Error, Result};

/// Minimum number of replications per grid point.
pub const MIN_REPLICATIONS: usize = 1000;
/// Allowed relative growth of the KS distance from one grid point to the next.
pub const TREND_SLACK: f64 = 0.2;
/// Indices above this are clamped; far beyond any sum that matters in double precision.
const MAX_INDEX: f64 = 1e15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// `p · nb(nu, p) ⇒ G_{nu,1}` as `p → 0`.
    Lemma14,
    /// Negative binomial sums of stable summands.
    Thm6,
    /// Normalized sums `S_N / √n` with a mixed index.
    Thm7,
    /// Sample means over a random sample size.
    Thm8,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::Lemma14, Theorem::Thm6, Theorem::Thm7, Theorem::Thm8];

    pub fn as_str(&self) -> &'static str {
        match self {
            Theorem::Lemma14 => "lemma14",
            Theorem::Thm6 => "thm6",
            Theorem::Thm7 => "thm7",
            Theorem::Thm8 => "thm8",
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Theorem::Lemma14 => "p * nb(nu, p) => gamma(nu, 1) as p -> 0",
            Theorem::Thm6 => "n^(-1/alpha) (X_1 + ... + X_N), N ~ nb(nu, 1/n), X_i alpha-stable => L_{alpha,nu}",
            Theorem::Thm7 => "S_N / sqrt(n) => L_{alpha,nu} when N/n => 2 M_{alpha/2,nu}",
            Theorem::Thm8 => "sigma sqrt(n) (T_N - theta) => L_{alpha,nu} when N/n => 1 / (2 M_{alpha/2,nu})",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown theorem tag {s:?} (expected lemma14, thm6, thm7 or thm8)")))
    }
}

/// Law of the iid summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summand {
    /// Symmetric strictly stable with the experiment's `alpha`.
    Stable,
    /// `±1` with probability ½ each.
    Rademacher,
    Normal,
    /// Standard exponential: mean 1, variance 1.
    Exponential,
}

impl Summand {
    pub const ALL: [Summand; 4] = [Summand::Stable, Summand::Rademacher, Summand::Normal, Summand::Exponential];

    pub fn as_str(&self) -> &'static str {
        match self {
            Summand::Stable => "stable",
            Summand::Rademacher => "rademacher",
            Summand::Normal => "normal",
            Summand::Exponential => "exponential",
        }
    }

    /// `(mean, standard deviation)` when both are finite.
    pub fn moments(&self) -> Option<(f64, f64)> {
        match self {
            Summand::Stable => None,
            Summand::Rademacher | Summand::Normal => Some((0.0, 1.0)),
            Summand::Exponential => Some((1.0, 1.0)),
        }
    }

    /// Sum of `n` iid copies, drawn exactly in O(1).
    fn sum(&self, n: f64, discrete: &mut ChaCha8Rng, cont: &mut ChaCha8Rng) -> f64 {
        match self {
            Summand::Rademacher => {
                let heads = Binomial::new(n as u64, 0.5).expect("valid binomial").sample(discrete) as f64;
                2.0 * heads - n
            }
            Summand::Normal => n.sqrt() * normal(cont),
            Summand::Exponential => Gamma::new(n, 1.0).expect("valid gamma").sample(cont),
            Summand::Stable => unreachable!("stable sums are drawn through the closure property"),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Summand {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Summand::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown summand law {s:?}")))
    }
}

/// An asymptotically normal statistic `T_n` with `sigma √n (T_n - theta) ⇒ N(0,1)`.
/// Here `T_n` is always the mean of `n` summands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Statistic {
    pub summand: Summand,
    pub sigma: Option<f64>,
    pub theta: Option<f64>,
}

impl Statistic {
    /// Sample mean with `theta` the summand mean and `sigma` the inverse standard deviation.
    pub fn sample_mean(summand: Summand) -> Self {
        let m = summand.moments();
        Self { summand, sigma: m.map(|(_, sd)| 1.0 / sd), theta: m.map(|(mean, _)| mean) }
    }

    fn constants(&self) -> Result<(f64, f64)> {
        match (self.sigma, self.theta) {
            (Some(s), Some(t)) if s > 0.0 && s.is_finite() && t.is_finite() => Ok((s, t)),
            _ => Err(Error::Domain(format!(
                "statistic over {} summands must declare sigma > 0 and a finite theta",
                self.summand
            ))),
        }
    }
}

/// How the random index is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexRule {
    /// The theorem's index (negative binomial, or `max(1, round(n V))`).
    Mixed,
    /// `N = n`: the control without a random index.
    Fixed,
}

/// Law the distances are measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reference {
    /// The theorem's limit.
    Limit,
    StandardNormal,
}

/// One fully specified convergence experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitExperiment {
    pub theorem: Theorem,
    pub alpha: f64,
    pub nu: f64,
    pub statistic: Statistic,
    pub index: IndexRule,
    pub reference: Reference,
    /// Values of `n` (increasing), or of `p` (decreasing) for `lemma14`.
    pub grid: Vec<f64>,
    pub replications: usize,
    pub seed: u64,
}

impl LimitExperiment {
    /// The theorem's default setup: stable summands for `thm6`, Rademacher
    /// for `thm7`, exponential sample means for `thm8`.
    pub fn new(theorem: Theorem, alpha: f64, nu: f64, grid: Vec<f64>, replications: usize, seed: u64) -> Self {
        let summand = match theorem {
            Theorem::Lemma14 | Theorem::Thm6 => Summand::Stable,
            Theorem::Thm7 => Summand::Rademacher,
            Theorem::Thm8 => Summand::Exponential,
        };
        Self {
            theorem,
            alpha,
            nu,
            statistic: Statistic::sample_mean(summand),
            index: IndexRule::Mixed,
            reference: Reference::Limit,
            grid,
            replications,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_domain!(self.nu > 0.0 && self.nu.is_finite(), "nu must be positive, got {}", self.nu);
        if self.theorem != Theorem::Lemma14 {
            ensure_domain!(self.alpha > 0.0 && self.alpha <= 2.0, "alpha must lie in (0, 2], got {}", self.alpha);
        }
        ensure_domain!(
            self.replications >= MIN_REPLICATIONS,
            "replications must be at least {MIN_REPLICATIONS}, got {}",
            self.replications
        );
        ensure_domain!(!self.grid.is_empty(), "grid is empty");
        if self.theorem == Theorem::Lemma14 {
            ensure_domain!(self.grid.iter().all(|&p| p > 0.0 && p < 1.0), "p grid values must lie in (0, 1)");
            ensure_domain!(self.grid.windows(2).all(|w| w[1] < w[0]), "p grid must be strictly decreasing");
        } else {
            ensure_domain!(
                self.grid.iter().all(|&n| n >= 1.0 && n.fract() == 0.0 && n <= 1e12),
                "n grid values must be positive integers"
            );
            ensure_domain!(self.grid.windows(2).all(|w| w[1] > w[0]), "n grid must be strictly increasing");
        }
        let s = self.statistic.summand;
        match self.theorem {
            Theorem::Lemma14 => {}
            Theorem::Thm6 => ensure_domain!(s == Summand::Stable, "thm6 needs alpha-stable summands, got {s}"),
            Theorem::Thm7 => {
                let (mean, _) = s
                    .moments()
                    .ok_or_else(|| Error::Domain(format!("thm7 needs finite-variance summands, got {s}")))?;
                ensure_domain!(mean == 0.0, "thm7 needs zero-mean summands; {s} has mean {mean}");
            }
            Theorem::Thm8 => {
                ensure_domain!(s.moments().is_some(), "thm8 needs finite-variance summands, got {s}");
                self.statistic.constants()?;
            }
        }
        Ok(())
    }

    /// KS threshold at the last grid point.
    pub fn threshold(&self) -> f64 {
        if self.reference == Reference::StandardNormal {
            return 0.01;
        }
        let laplace = self.alpha == 2.0 && self.nu == 1.0;
        match self.theorem {
            Theorem::Lemma14 => 0.01,
            Theorem::Thm6 if laplace => 0.01,
            Theorem::Thm6 => 0.015,
            Theorem::Thm7 if laplace => 0.01,
            Theorem::Thm7 => 0.02,
            Theorem::Thm8 => 0.015,
        }
    }

    fn reference_name(&self) -> String {
        match (self.reference, self.theorem) {
            (Reference::StandardNormal, _) => "normal(0,1)".into(),
            (_, Theorem::Lemma14) => format!("gamma(nu={}, 1)", self.nu),
            _ if self.alpha == 2.0 && self.nu == 1.0 => "laplace".into(),
            _ => format!("gen-linnik(alpha={}, nu={}) by inversion", self.alpha, self.nu),
        }
    }

    fn reference_cdf(&self) -> Result<Box<dyn Fn(f64) -> f64 + Sync>> {
        Ok(match (self.reference, self.theorem) {
            (Reference::StandardNormal, _) => Box::new(normal_cdf),
            (_, Theorem::Lemma14) => {
                let nu = self.nu;
                Box::new(move |x| gamma_p(nu, x).unwrap_or(f64::NAN))
            }
            _ if self.alpha == 2.0 && self.nu == 1.0 => Box::new(laplace_cdf),
            _ => {
                let t = InversionCdfTable::new(self.alpha, self.nu)?;
                Box::new(move |x| t.cdf(x))
            }
        })
    }

    /// `replications` draws of the normalized statistic at grid value `g`.
    pub fn draws(&self, g: f64) -> Result<Vec<f64>> {
        self.validate()?;
        let (alpha, nu, n) = (self.alpha, self.nu, g);
        let fixed = self.index == IndexRule::Fixed;
        let mixing = match self.theorem {
            Theorem::Thm7 | Theorem::Thm8 => Some(Sampler::new(&DistSpec::gen_mittag_leffler(alpha / 2.0, nu))?),
            _ => None,
        };
        let shape = Gamma::new(nu, 1.0).map_err(|e| Error::Domain(e.to_string()))?;
        let stable = match self.theorem {
            Theorem::Thm6 => Some(Sampler::new(&DistSpec::stable_symmetric(alpha))?),
            _ => None,
        };
        let summand = self.statistic.summand;
        let (sigma, theta) = self.statistic.constants().unwrap_or((1.0, 0.0));
        let theorem = self.theorem;

        let stream = RandomStream::new(self.seed, 0);
        Ok(chunked(self.replications, &stream, |s, out| {
            let mut mix = s.derive(0).rng();
            let mut disc = s.derive(1).rng();
            let mut cont = s.derive(2).rng();
            for v in out.iter_mut() {
                *v = match theorem {
                    Theorem::Lemma14 => {
                        let p = g;
                        let lambda = shape.sample(&mut mix) * (1.0 - p) / p;
                        p * (1.0 + poisson(lambda, &mut disc))
                    }
                    Theorem::Thm6 => {
                        let count = if fixed {
                            n
                        } else {
                            let p = 1.0 / n;
                            1.0 + poisson(shape.sample(&mut mix) * (1.0 - p) / p, &mut disc)
                        };
                        // A sum of `count` iid stable variables is count^(1/α) times one of them.
                        (count / n).powf(1.0 / alpha) * stable.as_ref().unwrap().draw(&mut cont)
                    }
                    Theorem::Thm7 | Theorem::Thm8 => {
                        let m = mixing.as_ref().unwrap().draw(&mut mix);
                        let scale = match (fixed, theorem) {
                            (true, _) => 1.0,
                            (false, Theorem::Thm7) => 2.0 * m,
                            (false, _) => 1.0 / (2.0 * m),
                        };
                        let count = index(n, scale);
                        let sum = summand.sum(count, &mut disc, &mut cont);
                        if theorem == Theorem::Thm7 {
                            sum / n.sqrt()
                        } else {
                            sigma * n.sqrt() * (sum / count - theta)
                        }
                    }
                };
            }
        }))
    }

    pub fn run(&self) -> Result<ConvergenceReport> {
        self.validate()?;
        let cdf = self.reference_cdf()?;
        let threshold = self.threshold();
        let mut rows = Vec::with_capacity(self.grid.len());
        for &g in &self.grid {
            let x = self.draws(g)?;
            let ks = crate::verification::ks_one_sample(&x, &cdf)?;
            rows.push(ConvergenceRow { n: g, ks, threshold, pass: ks <= threshold });
        }
        let summand = match self.theorem {
            Theorem::Lemma14 => "none".to_string(),
            Theorem::Thm6 => format!("stable(alpha={})", self.alpha),
            _ => self.statistic.summand.to_string(),
        };
        let index = match (self.index, self.theorem) {
            (IndexRule::Fixed, _) => "fixed N = n".to_string(),
            (_, Theorem::Lemma14) => "nb(nu, p)".to_string(),
            (_, Theorem::Thm6) => "nb(nu, 1/n)".to_string(),
            (_, Theorem::Thm7) => "max(1, round(2 n M_{alpha/2,nu}))".to_string(),
            (_, Theorem::Thm8) => "max(1, round(n / (2 M_{alpha/2,nu})))".to_string(),
        };
        Ok(ConvergenceReport {
            theorem: self.theorem.to_string(),
            alpha: self.alpha,
            nu: self.nu,
            summand,
            index,
            reference: self.reference_name(),
            replications: self.replications,
            seed: self.seed,
            rows,
            slack: TREND_SLACK,
            trend_ok: false,
            pass: false,
        }
        .finish())
    }
}

/// `max(1, round(n · v))`, never below one summand.
pub fn index(n: f64, v: f64) -> f64 {
    (n * v).round().clamp(1.0, MAX_INDEX)
}

/// Distance of `p · nb(nu, p)` to `gamma(nu, 1)` along a decreasing `p` grid.
pub fn run_lemma14(nu: f64, p_grid: &[f64], replications: usize, seed: u64) -> Result<ConvergenceReport> {
    LimitExperiment::new(Theorem::Lemma14, 2.0, nu, p_grid.to_vec(), replications, seed).run()
}

pub fn run_thm6(alpha: f64, nu: f64, n_grid: &[f64], replications: usize, seed: u64) -> Result<ConvergenceReport> {
    LimitExperiment::new(Theorem::Thm6, alpha, nu, n_grid.to_vec(), replications, seed).run()
}

pub fn run_thm7(
    alpha: f64,
    nu: f64,
    summand: Summand,
    n_grid: &[f64],
    replications: usize,
    seed: u64,
) -> Result<ConvergenceReport> {
    let mut e = LimitExperiment::new(Theorem::Thm7, alpha, nu, n_grid.to_vec(), replications, seed);
    e.statistic = Statistic::sample_mean(summand);
    e.run()
}

pub fn run_thm8(
    alpha: f64,
    nu: f64,
    statistic: Statistic,
    n_grid: &[f64],
    replications: usize,
    seed: u64,
) -> Result<ConvergenceReport> {
    let mut e = LimitExperiment::new(Theorem::Thm8, alpha, nu, n_grid.to_vec(), replications, seed);
    e.statistic = statistic;
    e.run()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_is_at_least_one() {
        assert_eq!(index(10.0, 0.0), 1.0);
        assert_eq!(index(10.0, 1e-9), 1.0);
        assert_eq!(index(10.0, 0.26), 3.0);
        assert_eq!(index(1e4, 1e300), MAX_INDEX);
    }

    #[test]
    fn validation() {
        let ok = LimitExperiment::new(Theorem::Thm7, 1.5, 2.0, vec![10.0, 100.0], 1000, 1);
        assert!(ok.validate().is_ok());
        let mut e = ok.clone();
        e.statistic = Statistic::sample_mean(Summand::Exponential);
        assert!(e.validate().unwrap_err().to_string().contains("zero-mean"));
        let mut e = ok.clone();
        e.grid = vec![100.0, 10.0];
        assert!(e.validate().is_err());
        let mut e = ok.clone();
        e.replications = 999;
        assert!(e.validate().is_err());
        let mut e = LimitExperiment::new(Theorem::Thm8, 1.5, 2.0, vec![10.0], 1000, 1);
        e.statistic.sigma = None;
        assert!(e.validate().is_err());
        assert!(LimitExperiment::new(Theorem::Thm6, 2.5, 1.0, vec![10.0], 1000, 1).validate().is_err());
        assert!(LimitExperiment::new(Theorem::Lemma14, 2.0, 1.0, vec![0.1, 0.2], 1000, 1).validate().is_err());
        assert!("thm9".parse::<Theorem>().is_err());
        assert_eq!("THM6".parse::<Theorem>().unwrap(), Theorem::Thm6);
    }

    #[test]
    fn thresholds() {
        let t = |th, a, n| LimitExperiment::new(th, a, n, vec![10.0], 1000, 1).threshold();
        assert_eq!(t(Theorem::Thm6, 2.0, 1.0), 0.01);
        assert_eq!(t(Theorem::Thm6, 1.5, 2.0), 0.015);
        assert_eq!(t(Theorem::Thm7, 1.5, 2.0), 0.02);
        assert_eq!(t(Theorem::Thm8, 2.0, 1.0), 0.015);
    }

    #[test]
    fn draws_are_reproducible() {
        let e = LimitExperiment::new(Theorem::Thm7, 1.5, 2.0, vec![100.0], 2000, 5);
        assert_eq!(e.draws(100.0).unwrap(), e.draws(100.0).unwrap());
    }
}
