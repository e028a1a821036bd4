//! Special functions against frozen extended-precision values and quadrature.
//!
//! The Mittag-Leffler tables were produced by `oracles/ml_oracle.py`
//! (mpmath, 40 digits) and are not derived from this crate.

#![allow(clippy::excessive_precision)]

use htm_core::special::quad::integrate;
use htm_core::special::{
    cdf_by_inversion, gamma_fn, genlinnik_cf, genml_lst, ml_cdf, ml_density, mittag_leffler,
    stable_ratio_density, InversionGrid,
};
use proptest::prelude::*;

#[rustfmt::skip]
const ML_VALUES: &[(f64, f64, f64)] = &[
    (0.3, 2.0, 79485.907625183568623),
    (0.3, -0.5, 0.63264900594359902246),
    (0.3, -1.0, 0.45659440832969067062),
    (0.3, -2.0, 0.29023222616787535504),
    (0.3, -5.0, 0.13708086902027063889),
    (0.3, -10.0, 0.072649729072772086177),
    (0.3, -20.0, 0.037406226213884453058),
    (0.3, -30.0, 0.025182617502927663383),
    (0.3, -50.0, 0.015228201501814695234),
    (0.5, 2.0, 108.94090438997797241),
    (0.5, -0.5, 0.61569034419292587487),
    (0.5, -1.0, 0.42758357615580700441),
    (0.5, -2.0, 0.25539567631050574387),
    (0.5, -5.0, 0.11070463773306862637),
    (0.5, -10.0, 0.056140992743822585858),
    (0.5, -20.0, 0.028174348741051319319),
    (0.5, -30.0, 0.018795888861416751497),
    (0.5, -50.0, 0.0112815362653237725),
    (0.7, 2.0, 20.966433131481956304),
    (0.7, -0.5, 0.60514759205956427271),
    (0.7, -1.0, 0.39961197811559939027),
    (0.7, -2.0, 0.21378672701529727534),
    (0.7, -5.0, 0.077569357764769809981),
    (0.7, -10.0, 0.036173265542309158149),
    (0.7, -20.0, 0.01739569829160397999),
    (0.7, -30.0, 0.011444251527526973394),
    (0.7, -50.0, 0.0067936656703830938718),
    (0.9, 2.0, 9.6049277845715006791),
    (0.9, -0.5, 0.603405498695860968),
    (0.9, -1.0, 0.37606602142464187902),
    (0.9, -2.0, 0.16352830001693004278),
    (0.9, -5.0, 0.034431324804098418323),
    (0.9, -10.0, 0.012820606051102099938),
    (0.9, -20.0, 0.0057495078161091125836),
    (0.9, -30.0, 0.003713707698459852111),
    (0.9, -50.0, 0.0021753530768569760498),
];

#[rustfmt::skip]
const ML_DENSITY_VALUES: &[(f64, f64, f64)] = &[
    (0.3, 0.1, 0.71927263958214993115),
    (0.3, 0.5, 0.15549849609336168696),
    (0.3, 1.0, 0.077316799030089672914),
    (0.3, 3.0, 0.024327463686017271229),
    (0.3, 10.0, 0.0064192223736727209277),
    (0.3, 30.0, 0.0018064873142435364425),
    (0.3, 100.0, 0.00042965322652048281962),
    (0.5, 0.1, 1.0605456776751555734),
    (0.5, 0.5, 0.27472797707261861252),
    (0.5, 1.0, 0.13660600739194928254),
    (0.5, 3.0, 0.038393758401823699771),
    (0.5, 10.0, 0.0078346932893044561967),
    (0.5, 30.0, 0.0016373604325582827883),
    (0.5, 100.0, 0.00027796561095304283729),
    (0.7, 0.1, 1.155752275701989382),
    (0.7, 0.5, 0.41064078014523017949),
    (0.7, 1.0, 0.2103933463890236887),
    (0.7, 3.0, 0.048624342718454505287),
    (0.7, 10.0, 0.0060836944082773561951),
    (0.7, 30.0, 0.00083108730084922360726),
    (0.7, 100.0, 0.000099223749988536405536),
    (0.9, 0.1, 1.0201776672506425014),
    (0.9, 0.5, 0.54781237133662776017),
    (0.9, 1.0, 0.30814879777662195447),
    (0.9, 3.0, 0.052029746781623176889),
    (0.9, 10.0, 0.0020903678167346339588),
    (0.9, 30.0, 0.00017511930431015105099),
    (0.9, 100.0, 0.00001582684939375897678),
];

#[test]
fn gamma_trivial_values() {
    assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
    assert!((gamma_fn(5.0).unwrap() - 24.0).abs() < 1e-12);
    assert!((gamma_fn(0.5).unwrap() - 1.772_453_850_905_516).abs() < 1e-13);
    assert!(gamma_fn(0.0).is_err());
}

#[test]
fn mittag_leffler_matches_oracle() {
    for &(d, z, want) in ML_VALUES {
        let got = mittag_leffler(d, z).unwrap();
        let tol = 1e-10 * want.abs().max(1.0);
        assert!((got - want).abs() < tol, "E_{d}({z}) = {got}, oracle {want}");
    }
}

#[test]
fn mittag_leffler_trivial_values() {
    assert!((mittag_leffler(1.0, 1.0).unwrap() - std::f64::consts::E).abs() < 1e-12);
    assert_eq!(mittag_leffler(0.7, 0.0).unwrap(), 1.0);
    assert!((mittag_leffler(0.5, -1.0).unwrap() - 0.427_583_576_155_807).abs() < 1e-12);
    for i in 0..=250 {
        let z = -20.0 + i as f64 * 0.1;
        assert!((mittag_leffler(1.0, z).unwrap() - z.exp()).abs() < 1e-10);
    }
}

#[test]
fn ml_density_matches_oracle() {
    for &(d, x, want) in ML_DENSITY_VALUES {
        let got = ml_density(d, x).unwrap();
        assert!((got - want).abs() < 1e-10 * want.max(1.0), "f_{d}({x}) = {got}, oracle {want}");
    }
}

fn density_mass(d: f64) -> f64 {
    // [0,1] with x = u^(1/δ) and [1,∞) with x = v^(-1/δ); both integrands stay bounded.
    let head = integrate(
        |u: f64| {
            let x = u.powf(1.0 / d);
            ml_density(d, x).unwrap() * x / (d * u)
        },
        0.0,
        1.0,
        1e-12,
        0.0,
        400,
    )
    .unwrap();
    let tail = integrate(
        |v: f64| {
            let x = v.powf(-1.0 / d);
            if !x.is_finite() {
                return 0.0;
            }
            ml_density(d, x).unwrap() * x / (d * v)
        },
        0.0,
        1.0,
        1e-12,
        0.0,
        400,
    )
    .unwrap();
    head.value + tail.value
}

#[test]
fn ml_density_has_unit_mass() {
    for &d in &[0.3, 0.5, 0.7, 0.9, 1.0] {
        let m = density_mass(d);
        assert!((m - 1.0).abs() < 1e-6, "delta {d}: mass {m}");
    }
}

#[test]
fn ml_density_is_nonnegative() {
    for &d in &[0.3, 0.5, 0.7, 0.9, 1.0] {
        for i in 1..400 {
            let x = 0.01 * 1.03f64.powi(i);
            assert!(ml_density(d, x).unwrap() >= 0.0);
        }
    }
}

#[test]
fn ml_cdf_shape_and_slope() {
    for &d in &[0.3, 0.5, 0.7, 0.9, 1.0] {
        assert_eq!(ml_cdf(d, 0.0).unwrap(), 0.0);
        let mut prev = 0.0;
        for i in 1..300 {
            let x = 0.01 * 1.04f64.powi(i);
            let p = ml_cdf(d, x).unwrap();
            assert!(p >= prev && p <= 1.0, "delta {d} x {x}");
            prev = p;
        }
        assert!(ml_cdf(d, 1e12).unwrap() > 1.0 - 1e-3);
        for &x in &[0.2, 1.0, 3.0, 20.0] {
            let h = 1e-5 * x;
            let slope = (ml_cdf(d, x + h).unwrap() - ml_cdf(d, x - h).unwrap()) / (2.0 * h);
            assert!((slope - ml_density(d, x).unwrap()).abs() < 1e-5, "delta {d} x {x}");
        }
    }
    assert!((ml_cdf(1.0, 1.0).unwrap() - 0.632_120_558_8).abs() < 1e-10);
}

#[test]
fn ml_cdf_matches_density_quadrature() {
    let d = 0.5f64;
    let q = integrate(
        |u: f64| {
            let x = u.powf(1.0 / d);
            ml_density(d, x).unwrap() * x / (d * u)
        },
        0.0,
        2f64.powf(d),
        1e-13,
        0.0,
        400,
    )
    .unwrap();
    assert!((q.value - ml_cdf(d, 2.0).unwrap()).abs() < 1e-8);
}

#[test]
fn inversion_examples() {
    let g = InversionGrid::for_params(2.0, 1.0);
    assert_eq!(cdf_by_inversion(2.0, 1.0, 0.0, &g).unwrap(), 0.5);
    assert!((cdf_by_inversion(2.0, 1.0, 1.0, &g).unwrap() - 0.816_060_279_4).abs() < 1e-4);
}

proptest! {
    #[test]
    fn stable_ratio_involution(d in 0.01f64..0.99, x in 1e-3f64..1e3) {
        let lhs = stable_ratio_density(d, x).unwrap();
        let rhs = stable_ratio_density(d, 1.0 / x).unwrap() / (x * x);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * lhs.max(1.0));
    }

    #[test]
    fn genlinnik_cf_is_even_and_bounded(a in 0.01f64..=2.0, nu in 0.01f64..10.0, t in -1e3f64..1e3) {
        let v = genlinnik_cf(a, nu, t).unwrap();
        prop_assert_eq!(v, genlinnik_cf(a, nu, -t).unwrap());
        prop_assert!(v > 0.0 && v <= 1.0);
    }

    #[test]
    fn genml_lst_is_monotone(d in 0.01f64..=1.0, nu in 0.01f64..10.0, s in 0.0f64..100.0) {
        let a = genml_lst(d, nu, s).unwrap();
        let b = genml_lst(d, nu, s + 0.5).unwrap();
        prop_assert!(b <= a && a <= 1.0);
    }

    #[test]
    fn ml_value_decreases_on_negative_axis(d in 0.05f64..=1.0, y in 0.0f64..49.0) {
        let a = mittag_leffler(d, -y).unwrap();
        let b = mittag_leffler(d, -y - 1.0).unwrap();
        prop_assert!(b < a + 1e-12, "{} {}", a, b);
    }
}
