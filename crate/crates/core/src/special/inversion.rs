//! Numeric inversion of the symmetric generalized Linnik characteristic
//! function `(1 + |t|^α)^(-ν)`.
//!
//! Both kernels are integrated panel by panel between consecutive zeros of
//! the trigonometric factor. Since the envelope is monotone, the panel
//! contributions alternate in sign with shrinking size, and the partial sums
//! are accelerated by repeated averaging.

use std::collections::VecDeque;
use std::f64::consts::PI;

use super::gamma::gamma_pos;
use super::quad::integrate;
use super::InversionGrid;
use crate::error::ensure_domain;
use crate::{Error, Result};

const AVERAGING_DEPTH: usize = 12;
// Target for the integral itself; the 1/π factor only improves it.
const TARGET: f64 = 1e-10;
const PANEL_LIMIT: usize = 200;

fn check_params(alpha: f64, nu: f64) -> Result<()> {
    ensure_domain!(alpha > 0.0 && alpha <= 2.0, "alpha must lie in (0, 2], got {alpha}");
    ensure_domain!(nu > 0.0 && nu.is_finite(), "nu must be positive, got {nu}");
    Ok(())
}

#[inline]
fn envelope(alpha: f64, nu: f64, t: f64) -> f64 {
    (-nu * t.powf(alpha).ln_1p()).exp()
}

/// Collapses a window of partial sums by averaging neighbours until one value remains.
fn averaged(window: &VecDeque<f64>) -> f64 {
    let mut v: Vec<f64> = window.iter().copied().collect();
    while v.len() > 1 {
        for i in 0..v.len() - 1 {
            v[i] = 0.5 * (v[i] + v[i + 1]);
        }
        v.pop();
    }
    v[0]
}

/// Sums `∫ f` over the panels `[edge(k), edge(k+1)]`, `k = 0, 1, ...`.
///
/// `tail(b)` bounds what is left once the panels reach `b`.
fn panel_series<F, E, T>(f: F, edge: E, tail: T, grid: &InversionGrid) -> Result<f64>
where
    F: Fn(f64) -> f64,
    E: Fn(usize) -> f64,
    T: Fn(f64) -> f64,
{
    let mut sum = 0.0;
    let mut window = VecDeque::with_capacity(AVERAGING_DEPTH + 1);
    let mut last = f64::NAN;
    let mut settled = 0;
    for k in 0..grid.panels {
        let a = edge(k);
        let b = edge(k + 1).min(grid.t_max);
        sum += integrate(&f, a, b, 1e-15, 1e-12, PANEL_LIMIT)?.value;
        if b >= grid.t_max || tail(b) < TARGET {
            return Ok(sum);
        }
        window.push_back(sum);
        if window.len() > AVERAGING_DEPTH {
            window.pop_front();
        }
        if window.len() == AVERAGING_DEPTH {
            let est = averaged(&window);
            if (est - last).abs() < TARGET {
                settled += 1;
                if settled >= 2 {
                    return Ok(est);
                }
            } else {
                settled = 0;
            }
            last = est;
        }
    }
    Err(Error::Accuracy(format!(
        "oscillatory integral did not settle within {} panels",
        grid.panels
    )))
}

/// Distribution function of the symmetric generalized Linnik law,
/// `F(x) = 1/2 + (1/π) ∫_0^∞ sin(tx)/t · (1 + t^α)^(-ν) dt`.
pub fn cdf_by_inversion(alpha: f64, nu: f64, x: f64, grid: &InversionGrid) -> Result<f64> {
    check_params(alpha, nu)?;
    ensure_domain!(!x.is_nan(), "x must not be NaN");
    if x == 0.0 {
        return Ok(0.5);
    }
    if x < 0.0 {
        return cdf_by_inversion(alpha, nu, -x, grid).map(|p| 1.0 - p);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let f = |t: f64| {
        if t == 0.0 {
            x
        } else {
            (t * x).sin() / t * envelope(alpha, nu, t)
        }
    };
    let width = PI / x;
    let integral = panel_series(
        f,
        |k| k as f64 * width,
        |b| 2.0 * envelope(alpha, nu, b) / (b * x),
        grid,
    )?;
    Ok((0.5 + integral / PI).clamp(0.0, 1.0))
}

/// Density of the symmetric generalized Linnik law,
/// `f(x) = (1/π) ∫_0^∞ cos(tx) (1 + t^α)^(-ν) dt`.
///
/// Only defined here for `αν > 1`, where the characteristic function is
/// absolutely integrable.
pub fn pdf_by_inversion(alpha: f64, nu: f64, x: f64, grid: &InversionGrid) -> Result<f64> {
    check_params(alpha, nu)?;
    ensure_domain!(!x.is_nan(), "x must not be NaN");
    if alpha * nu <= 1.0 {
        return Err(Error::Unsupported(format!(
            "density inversion needs alpha*nu > 1, got alpha*nu = {}",
            alpha * nu
        )));
    }
    let x = x.abs();
    if x == 0.0 {
        let a = 1.0 / alpha;
        return Ok(gamma_pos(a) * gamma_pos(nu - a) / (alpha * gamma_pos(nu)) / PI);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let f = |t: f64| (t * x).cos() * envelope(alpha, nu, t);
    let width = PI / x;
    let edge = |k: usize| if k == 0 { 0.0 } else { (k as f64 - 0.5) * width };
    let integral = panel_series(f, edge, |b| 2.0 * envelope(alpha, nu, b) / x, grid)?;
    Ok((integral / PI).max(0.0))
}

/// Tabulated generalized Linnik distribution function for bulk evaluation.
///
/// Nodes are geometric in `|x|` between `X_MIN` and a tail point where the
/// upper tail is negligible, with linear interpolation between them.
/// Arguments outside the table are evaluated directly.
#[derive(Debug, Clone)]
pub struct InversionCdfTable {
    alpha: f64,
    nu: f64,
    grid: InversionGrid,
    xs: Vec<f64>,
    ps: Vec<f64>,
}

impl InversionCdfTable {
    const X_MIN: f64 = 1e-8;
    const NODES: usize = 3000;

    pub fn new(alpha: f64, nu: f64) -> Result<Self> {
        check_params(alpha, nu)?;
        let grid = InversionGrid::for_params(alpha, nu);
        // Crude tail scale: the law is a stable variable times G^(1/α), so
        // P(|X| > x) decays like x^(-α) once x passes a few gamma quantiles.
        let spread = (nu + 6.0 * nu.sqrt() + 10.0).powf(1.0 / alpha);
        let x_max = if alpha < 2.0 {
            (spread * 1e6f64.powf(1.0 / alpha)).min(1e12)
        } else {
            spread * 20.0
        };
        let (lo, hi) = (Self::X_MIN.ln(), x_max.ln());
        let mut xs = Vec::with_capacity(Self::NODES + 1);
        xs.push(0.0);
        for i in 0..Self::NODES {
            xs.push((lo + (hi - lo) * i as f64 / (Self::NODES - 1) as f64).exp());
        }
        let mut ps = Vec::with_capacity(xs.len());
        let mut running: f64 = 0.5;
        for &x in &xs {
            // Round-off can nudge neighbouring nodes out of order far in the tail.
            running = running.max(cdf_by_inversion(alpha, nu, x, &grid)?);
            ps.push(running);
        }
        Ok(Self { alpha, nu, grid, xs, ps })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Largest tabulated `|x|`.
    pub fn x_max(&self) -> f64 {
        *self.xs.last().unwrap()
    }

    fn upper(&self, x: f64) -> f64 {
        let i = self.xs.partition_point(|&v| v <= x);
        if i >= self.xs.len() {
            return cdf_by_inversion(self.alpha, self.nu, x, &self.grid).unwrap_or(1.0);
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (p0, p1) = (self.ps[i - 1], self.ps[i]);
        p0 + (p1 - p0) * (x - x0) / (x1 - x0)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x >= 0.0 {
            self.upper(x)
        } else {
            1.0 - self.upper(-x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::laplace_cdf;

    fn grid(alpha: f64, nu: f64) -> InversionGrid {
        InversionGrid::for_params(alpha, nu)
    }

    #[test]
    fn laplace_values() {
        let g = grid(2.0, 1.0);
        assert_eq!(cdf_by_inversion(2.0, 1.0, 0.0, &g).unwrap(), 0.5);
        let v = cdf_by_inversion(2.0, 1.0, 1.0, &g).unwrap();
        assert!((v - 0.816_060_279_4).abs() < 1e-8, "{v}");
        for &x in &[-7.0, -2.5, -0.3, 0.01, 0.7, 3.0, 12.0] {
            let v = cdf_by_inversion(2.0, 1.0, x, &g).unwrap();
            assert!((v - laplace_cdf(x)).abs() < 1e-8, "x={x}: {v}");
        }
    }

    #[test]
    fn laplace_density() {
        let g = grid(2.0, 1.0);
        assert!((pdf_by_inversion(2.0, 1.0, 0.0, &g).unwrap() - 0.5).abs() < 1e-12);
        for &x in &[0.2, 1.0, 4.0] {
            let v = pdf_by_inversion(2.0, 1.0, x, &g).unwrap();
            assert!((v - 0.5 * (-x).exp()).abs() < 1e-8, "x={x}: {v}");
        }
        let v = pdf_by_inversion(2.0, 1.0, -1.0, &g).unwrap();
        assert!((v - 0.183_939_720_6).abs() < 1e-8);
    }

    #[test]
    fn variance_gamma_at_nu_two() {
        // (1+t²)^(-2) is the law of the sum of two Laplace variables:
        // F(x) = 1 - e^(-x)(2 + x)/4 for x ≥ 0.
        let g = grid(2.0, 2.0);
        for x in [0.5f64, 1.0, 3.0] {
            let want = 1.0 - (-x).exp() * (2.0 + x) / 4.0;
            assert!((cdf_by_inversion(2.0, 2.0, x, &g).unwrap() - want).abs() < 1e-8);
        }
    }

    #[test]
    fn cauchy_type_boundary() {
        // α = 1, ν = 1 has no elementary CDF but must stay symmetric and monotone.
        let g = grid(1.0, 1.0);
        let mut prev = 0.0;
        for i in -40..=40 {
            let x = i as f64 * 0.5;
            let p = cdf_by_inversion(1.0, 1.0, x, &g).unwrap();
            let q = cdf_by_inversion(1.0, 1.0, -x, &g).unwrap();
            assert!((p + q - 1.0).abs() < 1e-9);
            assert!(p >= prev - 1e-12, "not monotone at {x}");
            prev = p;
        }
    }

    #[test]
    fn density_integrates_to_one() {
        let (a, nu) = (1.6, 1.0);
        let g = grid(a, nu);
        let total = integrate(|x| pdf_by_inversion(a, nu, x, &g).unwrap(), 0.0, 200.0, 1e-9, 1e-9, 400)
            .unwrap()
            .value;
        // The remaining tail beyond 200 is about 1 - F(200).
        let tail = 1.0 - cdf_by_inversion(a, nu, 200.0, &g).unwrap();
        assert!((2.0 * (total + tail) - 1.0).abs() < 1e-3, "{total} + {tail}");
    }

    #[test]
    fn density_matches_cdf_slope() {
        let (a, nu) = (1.5, 2.0);
        let g = grid(a, nu);
        for &x in &[0.3, 1.0, 2.5] {
            let h = 1e-4;
            let slope = (cdf_by_inversion(a, nu, x + h, &g).unwrap()
                - cdf_by_inversion(a, nu, x - h, &g).unwrap())
                / (2.0 * h);
            let pdf = pdf_by_inversion(a, nu, x, &g).unwrap();
            assert!((slope - pdf).abs() < 1e-5, "x={x}: {slope} vs {pdf}");
        }
    }

    #[test]
    fn density_refuses_non_integrable_cf() {
        let g = grid(0.5, 1.0);
        assert!(matches!(pdf_by_inversion(0.5, 1.0, 1.0, &g), Err(Error::Unsupported(_))));
        assert!(matches!(pdf_by_inversion(1.0, 1.0, 1.0, &g), Err(Error::Unsupported(_))));
    }

    #[test]
    fn heavy_parameters_converge() {
        for &(a, nu) in &[(0.8, 0.5), (0.3, 1.0), (1.2, 0.7)] {
            let g = grid(a, nu);
            let mut prev = 0.5;
            for &x in &[1e-6, 0.01, 0.5, 3.0, 100.0, 1e5] {
                let p = cdf_by_inversion(a, nu, x, &g).unwrap();
                assert!(p >= prev - 1e-9 && p <= 1.0, "({a},{nu}) x={x}: {p}");
                prev = p;
            }
        }
    }

    #[test]
    fn tiny_panel_budget_is_an_accuracy_error() {
        let g = InversionGrid::new(1e12, 8).unwrap();
        assert!(matches!(cdf_by_inversion(0.3, 0.2, 50.0, &g), Err(Error::Accuracy(_))));
    }

    #[test]
    fn table_tracks_direct_evaluation() {
        let table = InversionCdfTable::new(1.5, 2.0).unwrap();
        let g = grid(1.5, 2.0);
        for &x in &[-6.0, -1.3, -0.02, 0.0, 0.4, 2.2, 9.0] {
            let direct = cdf_by_inversion(1.5, 2.0, x, &g).unwrap();
            assert!((table.cdf(x) - direct).abs() < 1e-5, "x={x}");
        }
        assert!((table.cdf(2.0 * table.x_max()) - 1.0).abs() < 1e-6);
    }
}
