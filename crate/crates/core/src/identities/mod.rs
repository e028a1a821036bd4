//! Executable registry of distributional equalities between mixtures.
//!
//! Each [`IdentityCase`] yields two [`DistExpr`] sides for a parameter point.
//! [`verify`] samples both sides from independent streams and compares them
//! with a two-sample KS test, plus ECF/LST checks when one side is a single
//! law with a known transform.

mod expr;
mod registry;

use serde::{Deserialize, Serialize};

pub use expr::{DistExpr, LeafStreams};
pub use registry::{find, params, registry, registry_json, IdentityCase, Params, Range};

use crate::distributions::RandomStream;
use crate::verification::{ecf_distance, ks_two_sample, lst_distance, MetricsConfig, VerificationReport};
use crate::Result;

/// Per-side sample size of the canonical suite.
pub const CANONICAL_N: usize = 200_000;
/// Fixture seed of the canonical suite.
pub const CANONICAL_SEED: u64 = 7;

/// Draws of one side of an identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExprSample {
    pub expr: String,
    pub stream: RandomStream,
    pub values: Vec<f64>,
}

fn case_stream(case: &IdentityCase, seed: u64) -> RandomStream {
    let k: u64 = case.id[1..].parse().unwrap_or(0);
    RandomStream::new(seed, 0).derive(k)
}

/// `n` draws of each side, the left from `stream.derive(0)` and the right
/// from `stream.derive(1)`; leaf `k` of a side uses `side.derive(k)`.
pub fn instantiate(
    case: &IdentityCase,
    p: &Params,
    n: usize,
    stream: &RandomStream,
) -> Result<(ExprSample, ExprSample)> {
    let (l, r) = case.sides(p)?;
    let draw = |e: &DistExpr, tag: u64| -> Result<ExprSample> {
        let s = stream.derive(tag);
        Ok(ExprSample { expr: e.to_string(), stream: s, values: e.sample(n, &s, LeafStreams::Independent)? })
    };
    Ok((draw(&l, 0)?, draw(&r, 1)?))
}

/// Compares two expressions: KS always; ECF of one side against the other's
/// characteristic function when that other side is a single symmetric law
/// with an elementary CF; likewise LST for nonnegative laws.
pub fn verify_exprs(
    subject: &str,
    lhs: &DistExpr,
    rhs: &DistExpr,
    n: usize,
    stream: &RandomStream,
    cfg: &MetricsConfig,
    policy: LeafStreams,
) -> Result<VerificationReport> {
    let (sl, sr) = (stream.derive(0), stream.derive(1));
    let a = lhs.sample(n, &sl, policy)?;
    let b = rhs.sample(n, &sr, policy)?;
    let mut report = VerificationReport::new(subject, stream.seed);
    report.sizes = vec![n, n];
    report.push("ks", ks_two_sample(&a, &b)?, cfg.ks_threshold(n, n));
    // (law with a known transform, sample of the other side, which side was sampled)
    for (known, other, side) in [(lhs, &b, "rhs"), (rhs, &a, "lhs")] {
        let Some(spec) = known.as_leaf() else { continue };
        if cfg.ecf && spec.is_symmetric() {
            if let Some(cf) = spec.characteristic_function() {
                report.push(format!("ecf_{side}"), ecf_distance(other, cf, &cfg.ecf_t)?, cfg.ecf_threshold(n));
            }
        }
        if cfg.lst && spec.is_nonnegative() {
            if let Some(lst) = spec.laplace_transform() {
                report.push(format!("lst_{side}"), lst_distance(other, lst, &cfg.lst_s)?, cfg.lst_threshold(n));
            }
        }
    }
    Ok(report)
}

/// Verifies `case` at `p` with `n` draws per side.
pub fn verify(
    case: &IdentityCase,
    p: &Params,
    n: usize,
    seed: u64,
    cfg: &MetricsConfig,
) -> Result<VerificationReport> {
    let (l, r) = case.sides(p)?;
    let mut report = verify_exprs(case.id, &l, &r, n, &case_stream(case, seed), cfg, LeafStreams::Independent)?;
    report.params = p.clone();
    Ok(report)
}

/// Verifies `case` at every point of its canonical grid.
pub fn verify_grid(case: &IdentityCase, n: usize, seed: u64, cfg: &MetricsConfig) -> Result<Vec<VerificationReport>> {
    case.grid().iter().map(|p| verify(case, p, n, seed, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::DistSpec;

    #[test]
    fn registry_size_and_domains() {
        assert_eq!(registry().len(), 26);
        let i20 = find("I20").unwrap();
        assert!(i20.contains(&params(&[("alpha", 1.5), ("nu", 2.5)])));
        assert!(!i20.contains(&params(&[("alpha", 2.5), ("nu", 1.0)])));
        assert!(!find("I22").unwrap().contains(&params(&[("alpha", 1.5), ("nu", 1.5)])));
        assert!(find("I99").is_none());
    }

    #[test]
    fn instantiate_uses_separate_streams() {
        let c = find("I04").unwrap();
        let s = RandomStream::new(3, 0);
        let (l, r) = instantiate(c, &params(&[("gamma", 1.0), ("gamma_prime", 1.0)]), 100, &s).unwrap();
        assert_ne!(l.values, r.values);
        assert!(l.values.iter().chain(&r.values).all(|&v| v > 0.0));
        assert!(instantiate(c, &params(&[("gamma", -1.0), ("gamma_prime", 1.0)]), 100, &s).is_err());
    }

    #[test]
    fn stable_product_collapses_at_unit_index() {
        let c = find("I01").unwrap();
        let (_, r) = c.sides(&params(&[("alpha", 1.5), ("alpha_prime", 1.0)])).unwrap();
        let s = RandomStream::new(9, 0);
        let (_, rv) = instantiate(c, &params(&[("alpha", 1.5), ("alpha_prime", 1.0)]), 500, &s).unwrap();
        let direct = DistExpr::leaf(DistSpec::stable_symmetric(1.5)).sample(500, &s.derive(1), LeafStreams::Independent);
        assert_eq!(r.leaves().len(), 2);
        assert!(rv.values == direct.unwrap());
    }

    #[test]
    fn report_carries_transform_metrics() {
        let c = find("I08").unwrap();
        let r = verify(c, &params(&[("delta", 0.7)]), 20_000, 1, &MetricsConfig::default()).unwrap();
        assert!(r.metric("ks").is_some() && r.metric("lst_rhs").is_some());
        assert!(r.metric("ecf_rhs").is_none());
        assert_eq!(r.params["delta"], 0.7);
    }
}
