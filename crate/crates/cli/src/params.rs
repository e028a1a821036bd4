use std::collections::BTreeMap;

use clap::Args;
use htm_core::DistSpec;

use crate::Failure;

/// Parameter flags shared by `sample`, `eval` and `verify`.
#[derive(Debug, Clone, Default, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_prime: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta_prime: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_prime: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Extra parameter as `name=value`; may be repeated.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub extra: Vec<String>,
}

impl ParamArgs {
    /// All given parameters by name (`alpha_prime`, not `alpha-prime`).
    pub fn collect(&self) -> Result<ParamSet, Failure> {
        let named = [
            ("alpha", self.alpha),
            ("alpha_prime", self.alpha_prime),
            ("nu", self.nu),
            ("delta", self.delta),
            ("delta_prime", self.delta_prime),
            ("gamma", self.gamma),
            ("gamma_prime", self.gamma_prime),
            ("r", self.r),
            ("mu", self.mu),
            ("p", self.p),
            ("lambda", self.lambda),
        ];
        let mut map = BTreeMap::new();
        for (k, v) in named {
            if let Some(v) = v {
                map.insert(k.to_string(), v);
            }
        }
        for kv in &self.extra {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("--param expects NAME=VALUE, got {kv:?}")))?;
            let k = k.trim().replace('-', "_");
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("parameter {k}: {v:?} is not a number")))?;
            if map.insert(k.clone(), v).is_some() {
                return Err(Failure::Usage(format!("parameter {k} given twice")));
            }
        }
        Ok(ParamSet { map, context: String::new() })
    }
}

/// Parameters being consumed by one family or function; leftovers are errors.
#[derive(Debug, Clone)]
pub struct ParamSet {
    pub map: BTreeMap<String, f64>,
    context: String,
}

impl ParamSet {
    pub fn context(mut self, ctx: &str) -> Self {
        self.context = ctx.to_string();
        self
    }

    pub fn req(&mut self, name: &str) -> Result<f64, Failure> {
        self.map
            .remove(name)
            .ok_or_else(|| Failure::Usage(format!("{} needs --{}", self.context, name.replace('_', "-"))))
    }

    pub fn opt(&mut self, name: &str, default: f64) -> f64 {
        self.map.remove(name).unwrap_or(default)
    }

    pub fn finish(self) -> Result<(), Failure> {
        match self.map.keys().next() {
            None => Ok(()),
            Some(k) => Err(Failure::Usage(format!(
                "parameter --{} does not apply to {}",
                k.replace('_', "-"),
                self.context
            ))),
        }
    }
}

/// Builds a distribution from its family name and flags; validation is left to the caller.
pub fn dist_spec(
    family: &str,
    mut ps: ParamSet,
    theta: Option<&str>,
    method: Option<&str>,
) -> Result<DistSpec, Failure> {
    use htm_core::distributions::*;
    ps = ps.context(&format!("family {family}"));
    let no_method = |what: &str| match method {
        Some(m) => Err(Failure::Usage(format!("family {what} has no method {m:?}"))),
        None => Ok(()),
    };
    if theta.is_some() && family != "stable" {
        return Err(Failure::Usage(format!("--theta only applies to family stable, not {family}")));
    }
    let spec = match family {
        "normal" => DistSpec::Normal,
        "laplace" => DistSpec::Laplace,
        "exponential" => DistSpec::Exponential,
        "weibull" => DistSpec::Weibull(WeibullParams { gamma: ps.req("gamma")? }),
        "gamma" => DistSpec::Gamma(GammaParams { r: ps.req("r")?, lambda: ps.opt("lambda", 1.0) }),
        "gen-gamma" => DistSpec::GenGamma(GGParams {
            r: ps.req("r")?,
            alpha: ps.req("alpha")?,
            lambda: ps.opt("lambda", 1.0),
        }),
        "exp-power" => DistSpec::ExpPower { nu: ps.req("nu")? },
        "neg-binom" => DistSpec::NegBinom(NegBinParams { nu: ps.req("nu")?, p: ps.req("p")? }),
        "stable" => {
            let theta = match theta.unwrap_or("symmetric") {
                "symmetric" | "0" => StableKind::Symmetric,
                "one-sided" | "1" => StableKind::OneSided,
                t => return Err(Failure::Usage(format!("--theta must be symmetric or one-sided, got {t:?}"))),
            };
            DistSpec::Stable(StableParams { alpha: ps.req("alpha")?, theta })
        }
        "stable-ratio" => DistSpec::StableRatio { delta: ps.req("delta")? },
        "z-mix" => DistSpec::ZMix(ZParams { r: ps.req("r")?, mu: ps.opt("mu", 1.0) }),
        "mittag-leffler" => DistSpec::MittagLeffler {
            delta: ps.req("delta")?,
            method: method.map_or(Ok(MlMethod::StableWeibull), str::parse)?,
        },
        "gen-mittag-leffler" => DistSpec::GenMittagLeffler(MLParams { delta: ps.req("delta")?, nu: ps.req("nu")? }),
        "linnik" => DistSpec::Linnik {
            alpha: ps.req("alpha")?,
            method: method.map_or(Ok(LinnikMethod::StableWeibull), str::parse)?,
        },
        "gen-linnik" => DistSpec::GenLinnik {
            alpha: ps.req("alpha")?,
            nu: ps.req("nu")?,
            method: method.map_or(Ok(GenLinnikMethod::StableGamma), str::parse)?,
        },
        other => {
            let names: Vec<&str> = FAMILIES.iter().map(|f| f.name).collect();
            return Err(Failure::Usage(format!("unknown family {other:?}; expected one of {}", names.join(", "))));
        }
    };
    if !matches!(spec, DistSpec::MittagLeffler { .. } | DistSpec::Linnik { .. } | DistSpec::GenLinnik { .. }) {
        no_method(family)?;
    }
    ps.finish()?;
    Ok(spec)
}
