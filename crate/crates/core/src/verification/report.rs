use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ks_threshold, KS_C_1PCT};

/// One metric with its critical value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricEntry {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Metric values for one comparison, with the inputs needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub subject: String,
    pub params: BTreeMap<String, f64>,
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub metrics: Vec<MetricEntry>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, seed: u64) -> Self {
        Self {
            subject: subject.into(),
            params: BTreeMap::new(),
            sizes: Vec::new(),
            seed,
            metrics: Vec::new(),
            pass: true,
        }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// Records a metric; it passes when `value <= threshold`.
    pub fn push(&mut self, name: impl Into<String>, value: f64, threshold: f64) {
        let pass = value <= threshold;
        self.pass &= pass;
        self.metrics.push(MetricEntry { name: name.into(), value, threshold, pass });
    }

    pub fn metric(&self, name: &str) -> Option<&MetricEntry> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}

/// Which metrics to run and at what level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsConfig {
    /// Kolmogorov coefficient for the two-sample test.
    pub ks_c: f64,
    pub ecf: bool,
    pub ecf_t: Vec<f64>,
    /// ECF threshold is `ecf_k / √n`.
    pub ecf_k: f64,
    pub lst: bool,
    pub lst_s: Vec<f64>,
    /// LST threshold is `lst_k / √n`.
    pub lst_k: f64,
}

impl Default for MetricsConfig {
    fn default() -> Self {
        Self {
            ks_c: KS_C_1PCT,
            ecf: true,
            ecf_t: vec![0.25, 0.5, 1.0, 2.0, 4.0],
            ecf_k: 4.0,
            lst: true,
            lst_s: vec![0.5, 1.0, 2.0],
            lst_k: 1.5,
        }
    }
}

impl MetricsConfig {
    pub fn ks_threshold(&self, n: usize, m: usize) -> f64 {
        ks_threshold(self.ks_c, n, m)
    }

    pub fn ecf_threshold(&self, n: usize) -> f64 {
        self.ecf_k / (n as f64).sqrt()
    }

    pub fn lst_threshold(&self, n: usize) -> f64 {
        self.lst_k / (n as f64).sqrt()
    }
}
