//! Statistical distances and the reports built from them.
//!
//! Every decision is a fixed critical value, never a p-value, so a run with
//! fixed seeds always reaches the same verdict.

mod report;
mod tail;

pub use report::{MetricEntry, MetricsConfig, VerificationReport};
pub use tail::{fractional_moment, hill_default_k, hill_plateau, hill_tail_index, HillPlateau};

use crate::error::ensure_domain;
use crate::Result;

/// Asymptotic Kolmogorov critical coefficient at the 1% level.
pub const KS_C_1PCT: f64 = 1.628;
/// Asymptotic Kolmogorov critical coefficient at the 0.1% level.
pub const KS_C_01PCT: f64 = 1.949;

/// Two-sample critical value `c √((n + m) / (n m))`.
pub fn ks_threshold(c: f64, n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    c * ((n + m) / (n * m)).sqrt()
}

/// One-sample critical value `c / √n`.
pub fn ks_one_sample_threshold(c: f64, n: usize) -> f64 {
    c / (n as f64).sqrt()
}

fn sorted(a: &[f64], what: &str) -> Result<Vec<f64>> {
    ensure_domain!(!a.is_empty(), "{what} sample is empty");
    ensure_domain!(a.iter().all(|v| !v.is_nan()), "{what} sample contains NaN");
    let mut v = a.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    Ok(v)
}

/// Largest gap between the empirical distribution functions of `a` and `b`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    let a = sorted(a, "first")?;
    let b = sorted(b, "second")?;
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = if a[i].total_cmp(&b[j]).is_le() { a[i] } else { b[j] };
        while i < a.len() && a[i].total_cmp(&x).is_eq() {
            i += 1;
        }
        while j < b.len() && b[j].total_cmp(&x).is_eq() {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

/// `sup |F_n(x) - cdf(x)|` for a continuous `cdf`.
pub fn ks_one_sample<F: Fn(f64) -> f64>(a: &[f64], cdf: F) -> Result<f64> {
    let a = sorted(a, "")?;
    let n = a.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in a.iter().enumerate() {
        let f = cdf(x);
        ensure_domain!(!f.is_nan(), "reference cdf returned NaN at {x}");
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// Largest deviation of the empirical characteristic function from a real,
/// symmetric `cf`: `|mean cos(tx) - cf(t)|` and `|mean sin(tx)|` over `t_grid`.
pub fn ecf_distance<F: Fn(f64) -> f64>(a: &[f64], cf: F, t_grid: &[f64]) -> Result<f64> {
    ensure_domain!(!t_grid.is_empty(), "t grid is empty");
    ensure_domain!(!a.is_empty(), "sample is empty");
    let n = a.len() as f64;
    let mut worst: f64 = 0.0;
    for &t in t_grid {
        if t == 0.0 {
            continue;
        }
        let (mut c, mut s) = (0.0, 0.0);
        for &x in a {
            let (si, co) = (t * x).sin_cos();
            c += co;
            s += si;
        }
        worst = worst.max((c / n - cf(t)).abs()).max((s / n).abs());
    }
    Ok(worst)
}

/// `max_s |mean e^(-s x) - lst(s)|` for a nonnegative sample.
pub fn lst_distance<F: Fn(f64) -> f64>(a: &[f64], lst: F, s_grid: &[f64]) -> Result<f64> {
    ensure_domain!(!s_grid.is_empty(), "s grid is empty");
    ensure_domain!(!a.is_empty(), "sample is empty");
    ensure_domain!(a.iter().all(|&x| x >= 0.0), "Laplace transform check needs a nonnegative sample");
    let n = a.len() as f64;
    let mut worst: f64 = 0.0;
    for &s in s_grid {
        if s == 0.0 {
            continue;
        }
        let m: f64 = a.iter().map(|&x| (-s * x).exp()).sum::<f64>() / n;
        worst = worst.max((m - lst(s)).abs());
    }
    Ok(worst)
}
