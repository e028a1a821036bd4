//! Parameter records, distribution specs and seeded exact samplers.
//!
//! Batches are generated in fixed-size chunks, chunk `i` drawing from
//! `stream.derive(i)`, and concatenated in chunk order. The output therefore
//! depends only on `(spec, n, seed, substream)` and not on the number of
//! worker threads.

mod params;
mod sampler;
mod spec;
mod stream;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use params::{
    GGParams, GammaParams, LinnikParams, MLParams, NegBinParams, StableKind, StableParams,
    WeibullParams, ZParams,
};
pub(crate) use sampler::{normal, poisson};
pub use sampler::Sampler;
pub use spec::{
    DistSpec, FamilyInfo, GenLinnikMethod, LinnikMethod, MlMethod, Transform, FAMILIES,
};
pub use stream::RandomStream;

use crate::error::ensure_domain;
use crate::{Error, Result};

/// Draws per chunk; changing it changes every batch.
pub const CHUNK: usize = 1 << 14;

/// Draws from one law together with their provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub spec: DistSpec,
    pub seed: u64,
    pub substream: u64,
    pub n: usize,
    pub values: Vec<f64>,
}

impl SampleBatch {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn stream(&self) -> RandomStream {
        RandomStream::new(self.seed, self.substream)
    }
}

/// Fills `n` values chunk by chunk; `fill(chunk_stream, out)` writes one chunk.
pub(crate) fn chunked<F>(n: usize, stream: &RandomStream, fill: F) -> Vec<f64>
where
    F: Fn(&RandomStream, &mut [f64]) + Sync,
{
    let mut values = vec![0.0; n];
    values.par_chunks_mut(CHUNK).enumerate().for_each(|(i, out)| {
        fill(&stream.derive(i as u64), out);
    });
    values
}

/// `n` independent draws from `spec`.
pub fn sample(spec: &DistSpec, n: usize, stream: &RandomStream) -> Result<SampleBatch> {
    ensure_domain!(n >= 1, "sample size must be at least 1");
    let sampler = Sampler::new(spec)?;
    let values = chunked(n, stream, |s, out| {
        let mut rng = s.rng();
        for v in out.iter_mut() {
            *v = sampler.draw(&mut rng);
        }
    });
    Ok(SampleBatch { spec: *spec, seed: stream.seed, substream: stream.substream, n, values })
}

/// Sampling restricted to the elementary families (normal, Laplace,
/// exponential, Weibull, gamma, generalized gamma, exponential power,
/// negative binomial).
pub fn sample_basic(spec: &DistSpec, n: usize, stream: &RandomStream) -> Result<SampleBatch> {
    match spec {
        DistSpec::Normal
        | DistSpec::Laplace
        | DistSpec::Exponential
        | DistSpec::Weibull(_)
        | DistSpec::Gamma(_)
        | DistSpec::GenGamma(_)
        | DistSpec::ExpPower { .. }
        | DistSpec::NegBinom(_) => sample(spec, n, stream),
        other => Err(Error::Domain(format!("{} is not an elementary family", other.family()))),
    }
}

pub fn sample_stable(p: StableParams, n: usize, stream: &RandomStream) -> Result<SampleBatch> {
    sample(&DistSpec::Stable(p), n, stream)
}

pub fn sample_stable_ratio(delta: f64, n: usize, stream: &RandomStream) -> Result<SampleBatch> {
    sample(&DistSpec::StableRatio { delta }, n, stream)
}

pub fn sample_z(p: ZParams, n: usize, stream: &RandomStream) -> Result<SampleBatch> {
    sample(&DistSpec::ZMix(p), n, stream)
}

pub fn sample_mittag_leffler(
    delta: f64,
    method: MlMethod,
    n: usize,
    stream: &RandomStream,
) -> Result<SampleBatch> {
    sample(&DistSpec::MittagLeffler { delta, method }, n, stream)
}

pub fn sample_gen_mittag_leffler(p: MLParams, n: usize, stream: &RandomStream) -> Result<SampleBatch> {
    sample(&DistSpec::GenMittagLeffler(p), n, stream)
}

pub fn sample_linnik(
    alpha: f64,
    method: LinnikMethod,
    n: usize,
    stream: &RandomStream,
) -> Result<SampleBatch> {
    sample(&DistSpec::Linnik { alpha, method }, n, stream)
}

pub fn sample_gen_linnik(
    p: LinnikParams,
    method: GenLinnikMethod,
    n: usize,
    stream: &RandomStream,
) -> Result<SampleBatch> {
    sample(&DistSpec::GenLinnik { alpha: p.alpha, nu: p.nu, method }, n, stream)
}
