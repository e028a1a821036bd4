use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::params::*;
use crate::error::ensure_domain;
use crate::special::{genlinnik_cf, genml_lst};
use crate::{Error, Result};

macro_rules! method_enum {
    ($(#[$m:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "kebab-case")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                let norm = s.replace('_', "-");
                $(if norm == $text {
                    return Ok($name::$variant);
                })+
                let known: Vec<&str> = vec![$($text),+];
                Err(Error::Domain(format!(
                    "unknown method '{s}' for {}; expected one of {}",
                    stringify!($name),
                    known.join(", ")
                )))
            }
        }
    };
}

method_enum!(
    /// Mittag-Leffler sampling routes.
    MlMethod {
        StableWeibull => "stable-weibull",
        ExpRatio => "exp-ratio",
    }
);

method_enum!(
    /// Linnik sampling routes.
    LinnikMethod {
        StableWeibull => "stable-weibull",
        NormalMl => "normal-ml",
        LaplaceRatio => "laplace-ratio",
    }
);

method_enum!(
    /// Generalized Linnik sampling routes.
    GenLinnikMethod {
        StableGamma => "stable-gamma",
        NormalGenMl => "normal-genml",
        LinnikZ => "linnik-z",
        StableGenMl => "stable-genml",
    }
);

/// One distribution family with its parameters and, where a family has
/// several samplers, the route to use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum DistSpec {
    /// Standard normal.
    Normal,
    /// Standard Laplace, density `½e^(-|x|)`.
    Laplace,
    /// Standard exponential.
    Exponential,
    Weibull(WeibullParams),
    Gamma(GammaParams),
    GenGamma(GGParams),
    /// One-sided exponential power law `D_nu ≐ G_{nu,1}^nu`.
    ExpPower { nu: f64 },
    NegBinom(NegBinParams),
    Stable(StableParams),
    /// Ratio of two independent one-sided `delta`-stable variables.
    StableRatio { delta: f64 },
    ZMix(ZParams),
    MittagLeffler { delta: f64, method: MlMethod },
    GenMittagLeffler(MLParams),
    Linnik { alpha: f64, method: LinnikMethod },
    GenLinnik { alpha: f64, nu: f64, method: GenLinnikMethod },
}

/// Name and parameter constraints of a family, for listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FamilyInfo {
    pub name: &'static str,
    pub constraints: &'static str,
    pub methods: &'static [&'static str],
}

pub const FAMILIES: &[FamilyInfo] = &[
    FamilyInfo { name: "normal", constraints: "none", methods: &[] },
    FamilyInfo { name: "laplace", constraints: "none", methods: &[] },
    FamilyInfo { name: "exponential", constraints: "none", methods: &[] },
    FamilyInfo { name: "weibull", constraints: "gamma>0", methods: &[] },
    FamilyInfo { name: "gamma", constraints: "r>0, lambda>0", methods: &[] },
    FamilyInfo { name: "gen-gamma", constraints: "r>0, alpha!=0, lambda>0", methods: &[] },
    FamilyInfo { name: "exp-power", constraints: "nu>0", methods: &[] },
    FamilyInfo { name: "neg-binom", constraints: "nu>0, p in (0,1)", methods: &[] },
    FamilyInfo {
        name: "stable",
        constraints: "alpha in (0,2] symmetric; alpha in (0,1] one-sided",
        methods: &[],
    },
    FamilyInfo { name: "stable-ratio", constraints: "delta in (0,1)", methods: &[] },
    FamilyInfo { name: "z-mix", constraints: "r in (0,1), mu>0", methods: &[] },
    FamilyInfo {
        name: "mittag-leffler",
        constraints: "delta in (0,1]",
        methods: &["stable-weibull", "exp-ratio"],
    },
    FamilyInfo { name: "gen-mittag-leffler", constraints: "delta in (0,1], nu>0", methods: &[] },
    FamilyInfo {
        name: "linnik",
        constraints: "alpha in (0,2]; laplace-ratio needs alpha<2",
        methods: &["stable-weibull", "normal-ml", "laplace-ratio"],
    },
    FamilyInfo {
        name: "gen-linnik",
        constraints: "alpha in (0,2], nu>0; linnik-z needs nu<=1",
        methods: &["stable-gamma", "normal-genml", "linnik-z", "stable-genml"],
    },
];

/// A real function carried by value, used for analytic transforms.
pub type Transform = Box<dyn Fn(f64) -> f64 + Send + Sync>;

impl DistSpec {
    pub fn stable_symmetric(alpha: f64) -> Self {
        DistSpec::Stable(StableParams { alpha, theta: StableKind::Symmetric })
    }

    pub fn stable_one_sided(alpha: f64) -> Self {
        DistSpec::Stable(StableParams { alpha, theta: StableKind::OneSided })
    }

    pub fn weibull(gamma: f64) -> Self {
        DistSpec::Weibull(WeibullParams { gamma })
    }

    pub fn gamma(r: f64, lambda: f64) -> Self {
        DistSpec::Gamma(GammaParams { r, lambda })
    }

    pub fn mittag_leffler(delta: f64) -> Self {
        DistSpec::MittagLeffler { delta, method: MlMethod::StableWeibull }
    }

    pub fn gen_mittag_leffler(delta: f64, nu: f64) -> Self {
        DistSpec::GenMittagLeffler(MLParams { delta, nu })
    }

    pub fn linnik(alpha: f64) -> Self {
        DistSpec::Linnik { alpha, method: LinnikMethod::StableWeibull }
    }

    pub fn gen_linnik(alpha: f64, nu: f64) -> Self {
        DistSpec::GenLinnik { alpha, nu, method: GenLinnikMethod::StableGamma }
    }

    pub fn z_mix(r: f64, mu: f64) -> Self {
        DistSpec::ZMix(ZParams { r, mu })
    }

    /// Kebab-case family name, as used on the command line.
    pub fn family(&self) -> &'static str {
        match self {
            DistSpec::Normal => "normal",
            DistSpec::Laplace => "laplace",
            DistSpec::Exponential => "exponential",
            DistSpec::Weibull(_) => "weibull",
            DistSpec::Gamma(_) => "gamma",
            DistSpec::GenGamma(_) => "gen-gamma",
            DistSpec::ExpPower { .. } => "exp-power",
            DistSpec::NegBinom(_) => "neg-binom",
            DistSpec::Stable(_) => "stable",
            DistSpec::StableRatio { .. } => "stable-ratio",
            DistSpec::ZMix(_) => "z-mix",
            DistSpec::MittagLeffler { .. } => "mittag-leffler",
            DistSpec::GenMittagLeffler(_) => "gen-mittag-leffler",
            DistSpec::Linnik { .. } => "linnik",
            DistSpec::GenLinnik { .. } => "gen-linnik",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DistSpec::Normal | DistSpec::Laplace | DistSpec::Exponential => Ok(()),
            DistSpec::Weibull(p) => p.validate(),
            DistSpec::Gamma(p) => p.validate(),
            DistSpec::GenGamma(p) => p.validate(),
            DistSpec::ExpPower { nu } => check_positive("nu", nu),
            DistSpec::NegBinom(p) => p.validate(),
            DistSpec::Stable(p) => p.validate(),
            DistSpec::StableRatio { delta } => check_open_unit_index("delta", delta),
            DistSpec::ZMix(p) => p.validate(),
            DistSpec::MittagLeffler { delta, .. } => check_unit_index("delta", delta),
            DistSpec::GenMittagLeffler(p) => p.validate(),
            DistSpec::Linnik { alpha, method } => {
                check_alpha(alpha)?;
                ensure_domain!(
                    method != LinnikMethod::LaplaceRatio || alpha < 2.0,
                    "method laplace-ratio needs alpha in (0, 2), got {alpha}"
                );
                Ok(())
            }
            DistSpec::GenLinnik { alpha, nu, method } => {
                LinnikParams { alpha, nu }.validate()?;
                ensure_domain!(
                    method != GenLinnikMethod::LinnikZ || nu <= 1.0,
                    "method linnik-z needs nu in (0, 1], got {nu}"
                );
                Ok(())
            }
        }
    }

    /// Laws supported on `[0, ∞)`.
    pub fn is_nonnegative(&self) -> bool {
        match self {
            DistSpec::Normal | DistSpec::Laplace => false,
            DistSpec::Stable(p) => p.theta == StableKind::OneSided,
            DistSpec::GenGamma(_) => true,
            DistSpec::Linnik { .. } | DistSpec::GenLinnik { .. } => false,
            _ => true,
        }
    }

    /// Laws symmetric about zero.
    pub fn is_symmetric(&self) -> bool {
        match self {
            DistSpec::Normal | DistSpec::Laplace => true,
            DistSpec::Stable(p) => p.theta == StableKind::Symmetric,
            DistSpec::Linnik { .. } | DistSpec::GenLinnik { .. } => true,
            _ => false,
        }
    }

    /// Real characteristic function, for the symmetric laws where it is elementary.
    pub fn characteristic_function(&self) -> Option<Transform> {
        match *self {
            DistSpec::Normal => Some(Box::new(|t: f64| (-0.5 * t * t).exp())),
            DistSpec::Laplace => Some(Box::new(|t: f64| 1.0 / (1.0 + t * t))),
            DistSpec::Stable(StableParams { alpha, theta: StableKind::Symmetric }) => {
                Some(Box::new(move |t: f64| (-t.abs().powf(alpha)).exp()))
            }
            DistSpec::Linnik { alpha, .. } => {
                Some(Box::new(move |t: f64| genlinnik_cf(alpha, 1.0, t).unwrap_or(f64::NAN)))
            }
            DistSpec::GenLinnik { alpha, nu, .. } => {
                Some(Box::new(move |t: f64| genlinnik_cf(alpha, nu, t).unwrap_or(f64::NAN)))
            }
            _ => None,
        }
    }

    /// Laplace transform `E e^(-sX)`, for the nonnegative laws where it is elementary.
    pub fn laplace_transform(&self) -> Option<Transform> {
        match *self {
            DistSpec::Exponential => Some(Box::new(|s: f64| 1.0 / (1.0 + s))),
            DistSpec::Weibull(WeibullParams { gamma: 1.0 }) => {
                Some(Box::new(|s: f64| 1.0 / (1.0 + s)))
            }
            DistSpec::Gamma(GammaParams { r, lambda }) => {
                Some(Box::new(move |s: f64| (lambda / (lambda + s)).powf(r)))
            }
            DistSpec::Stable(StableParams { alpha, theta: StableKind::OneSided }) => {
                Some(Box::new(move |s: f64| (-s.powf(alpha)).exp()))
            }
            DistSpec::MittagLeffler { delta, .. } => {
                Some(Box::new(move |s: f64| genml_lst(delta, 1.0, s).unwrap_or(f64::NAN)))
            }
            DistSpec::GenMittagLeffler(MLParams { delta, nu }) => {
                Some(Box::new(move |s: f64| genml_lst(delta, nu, s).unwrap_or(f64::NAN)))
            }
            _ => None,
        }
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistSpec::Normal | DistSpec::Laplace | DistSpec::Exponential => f.write_str(self.family()),
            DistSpec::Weibull(p) => write!(f, "weibull(gamma={})", p.gamma),
            DistSpec::Gamma(p) => write!(f, "gamma(r={}, lambda={})", p.r, p.lambda),
            DistSpec::GenGamma(p) => write!(f, "gen-gamma(r={}, alpha={}, lambda={})", p.r, p.alpha, p.lambda),
            DistSpec::ExpPower { nu } => write!(f, "exp-power(nu={nu})"),
            DistSpec::NegBinom(p) => write!(f, "neg-binom(nu={}, p={})", p.nu, p.p),
            DistSpec::Stable(p) => {
                let kind = match p.theta {
                    StableKind::Symmetric => "symmetric",
                    StableKind::OneSided => "one-sided",
                };
                write!(f, "stable(alpha={}, {kind})", p.alpha)
            }
            DistSpec::StableRatio { delta } => write!(f, "stable-ratio(delta={delta})"),
            DistSpec::ZMix(p) => write!(f, "z-mix(r={}, mu={})", p.r, p.mu),
            DistSpec::MittagLeffler { delta, method } => write!(f, "mittag-leffler(delta={delta}; {method})"),
            DistSpec::GenMittagLeffler(p) => write!(f, "gen-mittag-leffler(delta={}, nu={})", p.delta, p.nu),
            DistSpec::Linnik { alpha, method } => write!(f, "linnik(alpha={alpha}; {method})"),
            DistSpec::GenLinnik { alpha, nu, method } => {
                write!(f, "gen-linnik(alpha={alpha}, nu={nu}; {method})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in GenLinnikMethod::ALL {
            assert_eq!(m.as_str().parse::<GenLinnikMethod>().unwrap(), *m);
        }
        assert_eq!("normal_ml".parse::<LinnikMethod>().unwrap(), LinnikMethod::NormalMl);
        assert!("bogus".parse::<MlMethod>().is_err());
    }

    #[test]
    fn method_restrictions() {
        let bad = DistSpec::GenLinnik { alpha: 1.5, nu: 1.5, method: GenLinnikMethod::LinnikZ };
        assert!(bad.validate().unwrap_err().to_string().contains("(0, 1]"));
        let bad = DistSpec::Linnik { alpha: 2.0, method: LinnikMethod::LaplaceRatio };
        assert!(bad.validate().is_err());
        assert!(DistSpec::StableRatio { delta: 1.0 }.validate().is_err());
        assert!(DistSpec::stable_one_sided(1.5).validate().is_err());
    }

    #[test]
    fn serializes_with_family_tag() {
        let s = serde_json::to_string(&DistSpec::gen_linnik(1.5, 2.0)).unwrap();
        assert_eq!(s, r#"{"family":"gen-linnik","alpha":1.5,"nu":2.0,"method":"stable-gamma"}"#);
        let back: DistSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, DistSpec::gen_linnik(1.5, 2.0));
        let s = serde_json::to_string(&DistSpec::stable_one_sided(0.5)).unwrap();
        assert_eq!(s, r#"{"family":"stable","alpha":0.5,"theta":"one-sided"}"#);
    }

    #[test]
    fn families_listed_once() {
        assert_eq!(FAMILIES.len(), 15);
        let gml = FAMILIES.iter().find(|f| f.name == "gen-mittag-leffler").unwrap();
        assert!(gml.constraints.contains("delta in (0,1]") && gml.constraints.contains("nu>0"));
    }
}
