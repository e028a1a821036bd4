use serde::{Deserialize, Serialize};

use crate::format_number;

/// Distance to the reference law at one grid value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    /// Grid value: `n` for the random-sum experiments, `p` for `lemma14`.
    pub n: f64,
    pub ks: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Per-grid-point KS distances with the overall verdict.
///
/// The verdict passes when the last distance is under its threshold and no
/// step along the grid grows the distance by more than `slack`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub theorem: String,
    pub alpha: f64,
    pub nu: f64,
    pub summand: String,
    pub index: String,
    pub reference: String,
    pub replications: usize,
    pub seed: u64,
    pub rows: Vec<ConvergenceRow>,
    pub slack: f64,
    pub trend_ok: bool,
    pub pass: bool,
}

impl ConvergenceReport {
    pub(crate) fn finish(mut self) -> Self {
        self.trend_ok = self.rows.windows(2).all(|w| w[1].ks <= (1.0 + self.slack) * w[0].ks);
        self.pass = self.trend_ok && self.rows.last().is_some_and(|r| r.pass);
        self
    }

    pub fn final_ks(&self) -> f64 {
        self.rows.last().map_or(f64::NAN, |r| r.ks)
    }

    /// Strictly decreasing distances along the grid.
    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].ks < w[0].ks)
    }

    /// `n,ks,threshold,pass` with one line per grid value.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,ks,threshold,pass\n");
        for r in &self.rows {
            s += &format!("{},{},{},{}\n", format_number(r.n), format_number(r.ks), format_number(r.threshold), r.pass);
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is always serializable")
    }
}
