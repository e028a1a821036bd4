use serde::Serialize;

use crate::error::ensure_domain;
use crate::Result;

/// `⌊n^0.6⌋`, the default number of upper order statistics for the Hill estimator.
pub fn hill_default_k(n: usize) -> usize {
    ((n as f64).powf(0.6).floor() as usize).max(1)
}

fn top_order_statistics(a: &[f64], k: usize) -> Result<Vec<f64>> {
    ensure_domain!(k >= 1 && k < a.len(), "Hill needs 1 <= k < n, got k={k}, n={}", a.len());
    ensure_domain!(a.iter().all(|v| !v.is_nan()), "sample contains NaN");
    let mut v = a.to_vec();
    // Only the k+1 largest values matter.
    let pivot = v.len() - k - 1;
    v.select_nth_unstable_by(pivot, f64::total_cmp);
    let mut top = v.split_off(pivot);
    top.sort_unstable_by(|x, y| y.total_cmp(x));
    ensure_domain!(top[k] > 0.0, "the (k+1)-th largest value must be positive");
    Ok(top)
}

/// Hill estimate of the tail index from the `k` largest observations,
/// `k / Σ_{i<k} ln(x_(i) / x_(k))` with `x_(0) ≥ x_(1) ≥ ...`.
pub fn hill_tail_index(a: &[f64], k: usize) -> Result<f64> {
    let top = top_order_statistics(a, k)?;
    let base = top[k].ln();
    let s: f64 = top[..k].iter().map(|x| x.ln() - base).sum();
    Ok(k as f64 / s)
}

/// Hill estimates at `k` and `factor·k`, and whether they agree well enough
/// to indicate a power-law tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HillPlateau {
    pub k: usize,
    pub at_k: f64,
    pub wide_k: usize,
    pub at_wide_k: f64,
    pub relative_change: f64,
    pub heavy_tail: bool,
}

/// Flags a sample as heavy tailed when the Hill estimate changes by at most
/// `tolerance` (relative) between `k` and `factor·k`.
///
/// A light tail has no plateau: for exponential data the estimate behaves
/// like `ln(n/k)`, so it moves by `ln(factor)/ln(n/k)`; `factor = 8` makes
/// that comfortably larger than 25% at moderate `n`.
pub fn hill_plateau(a: &[f64], k: usize, factor: usize, tolerance: f64) -> Result<HillPlateau> {
    ensure_domain!(factor >= 2, "factor must be at least 2");
    let wide_k = k * factor;
    let at_k = hill_tail_index(a, k)?;
    let at_wide_k = hill_tail_index(a, wide_k)?;
    let relative_change = (at_k - at_wide_k).abs() / at_k.min(at_wide_k);
    Ok(HillPlateau { k, at_k, wide_k, at_wide_k, relative_change, heavy_tail: relative_change <= tolerance })
}

/// `mean |x|^p`.
pub fn fractional_moment(a: &[f64], p: f64) -> Result<f64> {
    ensure_domain!(!a.is_empty(), "sample is empty");
    Ok(a.iter().map(|x| x.abs().powf(p)).sum::<f64>() / a.len() as f64)
}
