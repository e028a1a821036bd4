use std::collections::BTreeMap;

use serde::Serialize;

use super::expr::DistExpr;
use crate::distributions::{DistSpec, GGParams, GenLinnikMethod, LinnikMethod, MlMethod};
use crate::{Error, Result};

/// Parameter values by name.
pub type Params = BTreeMap<String, f64>;

/// Builds a [`Params`] map from `(name, value)` pairs.
pub fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Admissible range of one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Range {
    /// `(0, ∞)`
    Positive,
    /// real, non-zero
    NonZero,
    /// `(0, 1)`
    OpenUnit,
    /// `(0, 1]`
    Unit,
    /// `(0, 2]`
    Alpha,
    /// `(0, 2)`
    OpenAlpha,
}

impl Range {
    pub fn contains(self, x: f64) -> bool {
        if !x.is_finite() {
            return false;
        }
        match self {
            Range::Positive => x > 0.0,
            Range::NonZero => x != 0.0,
            Range::OpenUnit => x > 0.0 && x < 1.0,
            Range::Unit => x > 0.0 && x <= 1.0,
            Range::Alpha => x > 0.0 && x <= 2.0,
            Range::OpenAlpha => x > 0.0 && x < 2.0,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Range::Positive => "(0, inf)",
            Range::NonZero => "R \\ {0}",
            Range::OpenUnit => "(0, 1)",
            Range::Unit => "(0, 1]",
            Range::Alpha => "(0, 2]",
            Range::OpenAlpha => "(0, 2)",
        }
    }
}

/// One distributional equality `lhs ≐ rhs` with its parameter domain.
#[derive(Clone, Copy)]
pub struct IdentityCase {
    pub id: &'static str,
    /// The equality in text form.
    pub anchor: &'static str,
    /// Free parameters, in the order used by `grid`.
    pub domain: &'static [(&'static str, Range)],
    build: fn(&Params) -> (DistExpr, DistExpr),
    grid: &'static [&'static [f64]],
}

impl std::fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCase").field("id", &self.id).field("anchor", &self.anchor).finish()
    }
}

impl IdentityCase {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.domain.iter().map(|d| d.0).collect()
    }

    /// `"alpha in (0, 2], nu in (0, 1]"`
    pub fn domain_text(&self) -> String {
        self.domain.iter().map(|(n, r)| format!("{n} in {}", r.describe())).collect::<Vec<_>>().join(", ")
    }

    /// Every declared parameter is present, in range, and nothing else is given.
    pub fn check_domain(&self, p: &Params) -> Result<()> {
        for (name, range) in self.domain {
            match p.get(*name) {
                None => return Err(Error::Domain(format!("{}: missing parameter {name}", self.id))),
                Some(&v) if !range.contains(v) => {
                    return Err(Error::Domain(format!(
                        "{}: {name} must lie in {}, got {v}",
                        self.id,
                        range.describe()
                    )))
                }
                _ => {}
            }
        }
        if let Some(extra) = p.keys().find(|k| !self.domain.iter().any(|d| d.0 == k.as_str())) {
            return Err(Error::Domain(format!(
                "{}: unexpected parameter {extra} (expects {})",
                self.id,
                self.param_names().join(", ")
            )));
        }
        Ok(())
    }

    pub fn contains(&self, p: &Params) -> bool {
        self.check_domain(p).is_ok()
    }

    /// Both sides at `p`.
    pub fn sides(&self, p: &Params) -> Result<(DistExpr, DistExpr)> {
        self.check_domain(p)?;
        let (l, r) = (self.build)(p);
        l.validate()?;
        r.validate()?;
        Ok((l, r))
    }

    /// The fixed parameter points the suite verifies.
    pub fn grid(&self) -> Vec<Params> {
        self.grid
            .iter()
            .map(|vals| self.domain.iter().zip(vals.iter()).map(|((n, _), &v)| (n.to_string(), v)).collect())
            .collect()
    }
}

fn leaf(s: DistSpec) -> DistExpr {
    DistExpr::leaf(s)
}
fn normal() -> DistExpr {
    leaf(DistSpec::Normal)
}
fn expo() -> DistExpr {
    leaf(DistSpec::Exponential)
}
fn weibull(g: f64) -> DistExpr {
    leaf(DistSpec::weibull(g))
}
fn sym(a: f64) -> DistExpr {
    leaf(DistSpec::stable_symmetric(a))
}
fn one_sided(a: f64) -> DistExpr {
    leaf(DistSpec::stable_one_sided(a))
}
/// Ratio of two independent one-sided stable variables; equals 1 at `d = 1`.
fn ratio(d: f64) -> DistExpr {
    one_sided(d).times(one_sided(d).recip())
}
fn z(r: f64, mu: f64) -> DistExpr {
    leaf(DistSpec::z_mix(r, mu))
}
/// `Z_{nu,1}^p`, with `Z_{1,1} = 1`.
fn z_pow(nu: f64, p: f64) -> Option<DistExpr> {
    (nu < 1.0).then(|| z(nu, 1.0).pow(p))
}
fn ml(d: f64, method: MlMethod) -> DistExpr {
    leaf(DistSpec::MittagLeffler { delta: d, method })
}
fn gen_ml(d: f64, nu: f64) -> DistExpr {
    leaf(DistSpec::gen_mittag_leffler(d, nu))
}
fn linnik(a: f64, method: LinnikMethod) -> DistExpr {
    leaf(DistSpec::Linnik { alpha: a, method })
}
fn gen_linnik(a: f64, nu: f64, method: GenLinnikMethod) -> DistExpr {
    leaf(DistSpec::GenLinnik { alpha: a, nu, method })
}
fn product(v: Vec<Option<DistExpr>>) -> DistExpr {
    let mut v: Vec<DistExpr> = v.into_iter().flatten().collect();
    if v.len() == 1 {
        v.pop().unwrap()
    } else {
        DistExpr::Product(v)
    }
}

use GenLinnikMethod as GL;
use LinnikMethod as LM;
use MlMethod as MM;
use Range::*;

const A: (&str, Range) = ("alpha", Alpha);
const NU: (&str, Range) = ("nu", Positive);
const NU1: (&str, Range) = ("nu", Unit);
const D: (&str, Range) = ("delta", Unit);

macro_rules! p {
    ($p:ident, $($n:ident),+) => {
        $(let $n = $p[stringify!($n)];)+
    };
}

static REGISTRY: [IdentityCase; 26] = [
    IdentityCase {
        id: "I01",
        anchor: "S_{aa',0} = S_{a,0} * S_{a',1}^(1/a)",
        domain: &[A, ("alpha_prime", Unit)],
        build: |p| {
            p!(p, alpha, alpha_prime);
            (sym(alpha * alpha_prime), sym(alpha).times(one_sided(alpha_prime).pow(1.0 / alpha)))
        },
        grid: &[&[2.0, 1.0], &[1.5, 1.0], &[2.0, 0.5], &[1.5, 0.6], &[0.8, 0.5]],
    },
    IdentityCase {
        id: "I02",
        anchor: "S_{aa',1} = S_{a,1} * S'_{a',1}^(1/a)",
        domain: &[("alpha", Unit), ("alpha_prime", Unit)],
        build: |p| {
            p!(p, alpha, alpha_prime);
            (one_sided(alpha * alpha_prime), one_sided(alpha).times(one_sided(alpha_prime).pow(1.0 / alpha)))
        },
        grid: &[&[1.0, 0.5], &[0.5, 1.0], &[0.7, 0.6], &[0.4, 0.5]],
    },
    IdentityCase {
        id: "I03",
        anchor: "S_{a,0} = X * sqrt(2 S_{a/2,1}), a symmetric stable law is a normal scale mixture",
        domain: &[A],
        build: |p| {
            p!(p, alpha);
            (sym(alpha), normal().times(one_sided(alpha / 2.0).scale(2.0).sqrt()))
        },
        grid: &[&[2.0], &[1.5], &[1.0], &[0.5]],
    },
    IdentityCase {
        id: "I04",
        anchor: "W_{gg'} = W_{g'}^(1/g)",
        domain: &[("gamma", Positive), ("gamma_prime", Positive)],
        build: |p| {
            p!(p, gamma, gamma_prime);
            (weibull(gamma * gamma_prime), weibull(gamma_prime).pow(1.0 / gamma))
        },
        grid: &[&[1.0, 1.0], &[2.0, 0.5], &[0.5, 3.0], &[0.3, 0.7]],
    },
    IdentityCase {
        id: "I05",
        anchor: "W_g = W_1 / S_{g,1}",
        domain: &[("gamma", Unit)],
        build: |p| {
            p!(p, gamma);
            (weibull(gamma), expo().times(one_sided(gamma).recip()))
        },
        grid: &[&[1.0], &[0.7], &[0.3]],
    },
    IdentityCase {
        id: "I06",
        anchor: "G_{r,mu} = W_1 * Z_{r,mu}^(-1), a gamma law with shape below one is mixed exponential",
        domain: &[("r", OpenUnit), ("mu", Positive)],
        build: |p| {
            p!(p, r, mu);
            (leaf(DistSpec::gamma(r, mu)), expo().times(z(r, mu).recip()))
        },
        grid: &[&[0.5, 1.0], &[0.2, 2.0], &[0.9, 0.5], &[0.05, 1.0]],
    },
    IdentityCase {
        id: "I07",
        anchor: "GG_{r,a,mu} = W_1 * (S_{a,1} Z_{r,mu}^(1/a))^(-1), a generalized gamma law is mixed exponential",
        domain: &[("r", OpenUnit), ("alpha", Unit), ("mu", Positive)],
        build: |p| {
            p!(p, r, alpha, mu);
            (
                leaf(DistSpec::GenGamma(GGParams { r, alpha, lambda: mu })),
                expo().times(one_sided(alpha).times(z(r, mu).pow(1.0 / alpha)).recip()),
            )
        },
        grid: &[&[0.5, 1.0, 1.0], &[0.3, 0.5, 2.0], &[0.7, 0.8, 0.5]],
    },
    IdentityCase {
        id: "I08",
        anchor: "M_d = S_{d,1} * W_d",
        domain: &[D],
        build: |p| {
            p!(p, delta);
            (ml(delta, MM::ExpRatio), one_sided(delta).times(weibull(delta)))
        },
        grid: &[&[1.0], &[0.7], &[0.5], &[0.2]],
    },
    IdentityCase {
        id: "I09",
        anchor: "M_d = W_1 * R_d, R_d = S_{d,1} / S'_{d,1}",
        domain: &[D],
        build: |p| {
            p!(p, delta);
            (ml(delta, MM::StableWeibull), expo().times(ratio(delta)))
        },
        grid: &[&[1.0], &[0.6], &[0.3]],
    },
    IdentityCase {
        id: "I10",
        anchor: "M_{dd'} = M_d * R_{d'}^(1/d)",
        domain: &[D, ("delta_prime", Unit)],
        build: |p| {
            p!(p, delta, delta_prime);
            (
                ml(delta * delta_prime, MM::ExpRatio),
                ml(delta, MM::StableWeibull).times(ratio(delta_prime).pow(1.0 / delta)),
            )
        },
        grid: &[&[1.0, 1.0], &[0.5, 1.0], &[1.0, 0.5], &[0.7, 0.6], &[0.4, 0.5]],
    },
    IdentityCase {
        id: "I11",
        anchor: "L_a = S_{a,0} * W_1^(1/a)",
        domain: &[A],
        build: |p| {
            p!(p, alpha);
            let lhs = if alpha == 2.0 { leaf(DistSpec::Laplace) } else { linnik(alpha, LM::NormalMl) };
            (lhs, sym(alpha).times(expo().pow(1.0 / alpha)))
        },
        grid: &[&[2.0], &[1.5], &[1.0], &[0.5]],
    },
    IdentityCase {
        id: "I12",
        anchor: "L_{aa'} = L_a * R_{a'}^(1/a)",
        domain: &[A, ("alpha_prime", Unit)],
        build: |p| {
            p!(p, alpha, alpha_prime);
            (
                linnik(alpha * alpha_prime, LM::NormalMl),
                linnik(alpha, LM::StableWeibull).times(ratio(alpha_prime).pow(1.0 / alpha)),
            )
        },
        grid: &[&[2.0, 1.0], &[1.5, 1.0], &[2.0, 0.5], &[1.5, 0.6], &[1.0, 0.4]],
    },
    IdentityCase {
        id: "I13",
        anchor: "L_a = Lambda * sqrt(R_{a/2}), a Linnik law is a Laplace scale mixture",
        domain: &[("alpha", OpenAlpha)],
        build: |p| {
            p!(p, alpha);
            (linnik(alpha, LM::StableWeibull), leaf(DistSpec::Laplace).times(ratio(alpha / 2.0).sqrt()))
        },
        grid: &[&[1.999], &[1.5], &[1.0], &[0.4]],
    },
    IdentityCase {
        id: "I14",
        anchor: "L_{aa'} = S_{a,0} * M_{a'}^(1/a)",
        domain: &[A, ("alpha_prime", Unit)],
        build: |p| {
            p!(p, alpha, alpha_prime);
            (
                linnik(alpha * alpha_prime, LM::NormalMl),
                sym(alpha).times(ml(alpha_prime, MM::ExpRatio).pow(1.0 / alpha)),
            )
        },
        grid: &[&[2.0, 1.0], &[1.5, 1.0], &[1.5, 0.6], &[1.0, 0.5]],
    },
    IdentityCase {
        id: "I15",
        anchor: "L_a = X * sqrt(2 M_{a/2})",
        domain: &[A],
        build: |p| {
            p!(p, alpha);
            (linnik(alpha, LM::StableWeibull), normal().times(ml(alpha / 2.0, MM::ExpRatio).scale(2.0).sqrt()))
        },
        grid: &[&[2.0], &[1.5], &[1.0], &[0.5]],
    },
    IdentityCase {
        id: "I16",
        anchor: "M_d = sqrt(2) |X| * R_d * W_2, a Mittag-Leffler law is a scale mixture of half-normal laws",
        domain: &[D],
        build: |p| {
            p!(p, delta);
            (
                ml(delta, MM::StableWeibull),
                normal().abs().times(ratio(delta)).times(weibull(2.0)).scale(std::f64::consts::SQRT_2),
            )
        },
        grid: &[&[1.0], &[0.6], &[0.3]],
    },
    IdentityCase {
        id: "I17",
        anchor: "L_{a,nu} = S_{a,0} * G_{nu,1}^(1/a)",
        domain: &[A, NU],
        build: |p| {
            p!(p, alpha, nu);
            (
                gen_linnik(alpha, nu, GL::NormalGenMl),
                sym(alpha).times(leaf(DistSpec::gamma(nu, 1.0)).pow(1.0 / alpha)),
            )
        },
        grid: &[&[2.0, 1.0], &[1.0, 1.0], &[1.5, 2.0], &[0.8, 0.5]],
    },
    IdentityCase {
        id: "I18",
        anchor: "L_{a,nu} = S_{a,0} * D_nu^(1/(a nu)), with D_nu^(1/nu) = G_{nu,1}",
        domain: &[A, NU],
        build: |p| {
            p!(p, alpha, nu);
            (
                gen_linnik(alpha, nu, GL::StableGenMl),
                sym(alpha).times(leaf(DistSpec::ExpPower { nu }).pow(1.0 / (alpha * nu))),
            )
        },
        grid: &[&[2.0, 1.0], &[1.5, 2.0], &[1.0, 0.5], &[0.8, 3.0]],
    },
    IdentityCase {
        id: "I19",
        anchor: "M_{a/2,nu} = S_{a/2,1} * GG_{nu,a/2,1}",
        domain: &[A, NU],
        build: |p| {
            p!(p, alpha, nu);
            let d = alpha / 2.0;
            (gen_ml(d, nu), one_sided(d).times(leaf(DistSpec::GenGamma(GGParams { r: nu, alpha: d, lambda: 1.0 }))))
        },
        grid: &[&[2.0, 1.0], &[1.5, 2.0], &[1.0, 0.5], &[0.4, 1.5]],
    },
    IdentityCase {
        id: "I20",
        anchor: "L_{a,nu} = X * sqrt(2 M_{a/2,nu}), a generalized Linnik law is a normal scale mixture",
        domain: &[A, NU],
        build: |p| {
            p!(p, alpha, nu);
            (gen_linnik(alpha, nu, GL::StableGamma), normal().times(gen_ml(alpha / 2.0, nu).scale(2.0).sqrt()))
        },
        grid: &[&[2.0, 1.0], &[1.5, 2.0], &[1.0, 1.0], &[0.8, 0.5], &[1.5, 2.5]],
    },
    IdentityCase {
        id: "I21",
        anchor: "L_{aa',nu} = S_{a,0} * M_{a',nu}^(1/a)",
        domain: &[A, ("alpha_prime", OpenUnit), NU],
        build: |p| {
            p!(p, alpha, alpha_prime, nu);
            (
                gen_linnik(alpha * alpha_prime, nu, GL::StableGamma),
                sym(alpha).times(gen_ml(alpha_prime, nu).pow(1.0 / alpha)),
            )
        },
        grid: &[&[2.0, 0.5, 1.0], &[1.5, 0.6, 2.0], &[1.0, 0.9, 0.5], &[2.0, 0.99, 3.0]],
    },
    IdentityCase {
        id: "I22",
        anchor: "L_{a,nu} = L_a * Z_{nu,1}^(-1/a)",
        domain: &[A, NU1],
        build: |p| {
            p!(p, alpha, nu);
            (
                gen_linnik(alpha, nu, GL::StableGamma),
                product(vec![Some(linnik(alpha, LM::StableWeibull)), z_pow(nu, -1.0 / alpha)]),
            )
        },
        grid: &[&[2.0, 1.0], &[1.5, 0.5], &[1.0, 0.3], &[0.8, 1.0]],
    },
    IdentityCase {
        id: "I23",
        anchor: "L_{a,nu} = X * Z_{nu,1}^(-1/a) * sqrt(2 M_{a/2})",
        domain: &[A, NU1],
        build: |p| {
            p!(p, alpha, nu);
            (
                gen_linnik(alpha, nu, GL::NormalGenMl),
                product(vec![
                    Some(normal()),
                    z_pow(nu, -1.0 / alpha),
                    Some(ml(alpha / 2.0, MM::ExpRatio).scale(2.0).sqrt()),
                ]),
            )
        },
        grid: &[&[2.0, 1.0], &[1.5, 0.5], &[1.2, 0.7], &[0.6, 0.2]],
    },
    IdentityCase {
        id: "I24",
        anchor: "M_{d,nu} = Z_{nu,1}^(-1/d) * M_d",
        domain: &[D, NU1],
        build: |p| {
            p!(p, delta, nu);
            (gen_ml(delta, nu), product(vec![z_pow(nu, -1.0 / delta), Some(ml(delta, MM::ExpRatio))]))
        },
        grid: &[&[1.0, 1.0], &[1.0, 0.5], &[0.6, 0.5], &[0.3, 0.8]],
    },
    IdentityCase {
        id: "I25",
        anchor: "M_{dd',nu} = S_{d,1} * M_{d',nu}^(1/d)",
        domain: &[D, ("delta_prime", Unit), NU],
        build: |p| {
            p!(p, delta, delta_prime, nu);
            (gen_ml(delta * delta_prime, nu), one_sided(delta).times(gen_ml(delta_prime, nu).pow(1.0 / delta)))
        },
        grid: &[&[1.0, 1.0, 1.0], &[0.5, 1.0, 2.0], &[1.0, 0.5, 0.5], &[0.7, 0.6, 1.5]],
    },
    IdentityCase {
        id: "I26",
        anchor: "GG_{r,a,mu} = G_{r,mu}^(1/a) = mu^(-1/a) G_{r,1}^(1/a)",
        domain: &[("r", Positive), ("alpha", NonZero), ("mu", Positive)],
        build: |p| {
            p!(p, r, alpha, mu);
            (
                leaf(DistSpec::GenGamma(GGParams { r, alpha, lambda: mu })),
                leaf(DistSpec::gamma(r, 1.0)).pow(1.0 / alpha).scale(mu.powf(-1.0 / alpha)),
            )
        },
        grid: &[&[1.0, 1.0, 1.0], &[0.5, 2.0, 3.0], &[2.0, -1.0, 0.5], &[3.0, 0.3, 1.0]],
    },
];

/// All identity cases, in id order.
pub fn registry() -> &'static [IdentityCase] {
    &REGISTRY
}

/// Looks up a case by id (case-insensitive).
pub fn find(id: &str) -> Option<&'static IdentityCase> {
    REGISTRY.iter().find(|c| c.id.eq_ignore_ascii_case(id))
}

#[derive(Serialize)]
struct Entry<'a> {
    id: &'a str,
    anchor: &'a str,
    params: Vec<&'a str>,
    domain: String,
}

/// The registry as a JSON array of `{id, anchor, params, domain}`.
pub fn registry_json() -> String {
    let v: Vec<Entry> = REGISTRY
        .iter()
        .map(|c| Entry { id: c.id, anchor: c.anchor, params: c.param_names(), domain: c.domain_text() })
        .collect();
    serde_json::to_string_pretty(&v).expect("registry is serializable")
}
