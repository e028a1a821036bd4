//! Heavy-tailed mixture laws.
//!
//! Samplers and analytics for the strictly stable, Weibull, (generalized)
//! gamma, (generalized) Mittag-Leffler and (generalized) Linnik families,
//! a registry of the distributional identities that connect them, the
//! statistical checks used to verify those identities by simulation, and
//! Monte-Carlo experiments for random-sum limit theorems whose limit is the
//! generalized Linnik law.
//!
//! The crate is organised bottom-up:
//!
//! - [`special`]: gamma, Mittag-Leffler function and density, closed-form
//!   densities and transforms, characteristic-function inversion.
//! - [`distributions`]: validated parameter records, [`DistSpec`], seeded
//!   [`RandomStream`]s and exact samplers.
//! - [`verification`]: KS statistics, empirical CF/LST distances, Hill.
//! - [`identities`]: the identity registry and its verifier.
//! - [`limit`]: random-sum convergence experiments.

// Frozen reference constants carry more digits than f64 holds, and
// `!(x > 0.0)` style checks are used on purpose to reject NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod distributions;
mod error;
mod format;
pub mod identities;
pub mod limit;
pub mod special;
pub mod verification;

pub use distributions::{DistSpec, RandomStream, SampleBatch};
pub use error::{Error, Result};
pub use format::format_number;
