use serde::{Deserialize, Serialize};

use super::verify::{CutCheckReport, SpectralCheckReport};
use crate::hypercore::Hypergraph;
use crate::oracle::QueryLedger;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputSummary {
    pub n: usize,
    pub m: usize,
    pub total_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputSummary {
    pub m: usize,
    pub total_weight: f64,
}

/// One sparsification or verification run, in the on-disk report layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub input: InputSummary,
    pub output: OutputSummary,
    pub epsilon: f64,
    pub mode: String,
    pub seed: u64,
    pub queries: QueryLedger,
    pub cut_check: Option<CutCheckReport>,
    pub spectral_check: Option<SpectralCheckReport>,
    pub runtime_ms: f64,
}

impl RunReport {
    pub fn new(input: &Hypergraph, output: &Hypergraph, epsilon: f64, mode: &str, seed: u64) -> Self {
        RunReport {
            input: InputSummary {
                n: input.n(),
                m: input.m(),
                total_weight: input.total_weight(),
            },
            output: OutputSummary {
                m: output.m(),
                total_weight: output.total_weight(),
            },
            epsilon,
            mode: mode.to_string(),
            seed,
            queries: QueryLedger::default(),
            cut_check: None,
            spectral_check: None,
            runtime_ms: 0.0,
        }
    }

    /// True unless an attached check failed.
    pub fn passed(&self) -> bool {
        self.cut_check.as_ref().is_none_or(|c| c.passed) && self.spectral_check.as_ref().is_none_or(|s| s.passed)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }
}
