use serde::{Deserialize, Serialize};

use crate::cutsparse::{sparsify_cut, CutPipelineConfig, RecursionTrace, SamplingRate};
use crate::error::Result;
use crate::instances::gen_random;
use crate::oracle::{OracleHandle, QueryLedger};

/// Allowed spread of value-query counts across edge counts.
pub const VALUE_BAND: f64 = 0.10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingConfig {
    pub n: usize,
    pub m_values: Vec<usize>,
    pub epsilon: f64,
    pub seeds: Vec<u64>,
    pub r_min: usize,
    pub r_max: usize,
    pub beta: Option<f64>,
}

impl ScalingConfig {
    pub fn new(n: usize, m_values: Vec<usize>, epsilon: f64, seeds: Vec<u64>) -> Self {
        ScalingConfig {
            n,
            m_values,
            epsilon,
            seeds,
            r_min: 2,
            r_max: 5.min(n),
            beta: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub m: usize,
    pub seed: u64,
    pub queries: QueryLedger,
    pub records: usize,
    /// Distinct edges collected over all traced cuts.
    pub collected: u64,
    /// Expected cut-edge draws needed to collect them.
    pub expected_edge_draws: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub config: ScalingConfig,
    pub rows: Vec<ScalingRow>,
    /// `(max - min) / min` of value-query counts over all rows.
    pub value_spread: f64,
    pub value_band_ok: bool,
    /// Cut-edge queries stay within `1.5 x expected + 20` per record.
    pub edge_bound_ok: bool,
}

/// Expected draws to see `collected` distinct edges at each unit-weight
/// record: `sum_{j < N} c / (c - j)`.
pub fn expected_collection_draws(trace: &RecursionTrace) -> f64 {
    trace
        .records
        .iter()
        .map(|r| match r.rate {
            SamplingRate::Binomial { .. } => {
                let c = r.cut_weight.round();
                (0..r.collected).map(|j| c / (c - j as f64)).sum::<f64>()
            }
            SamplingRate::Poisson { .. } => r.draws as f64,
        })
        .sum()
}

/// Runs the cut pipeline on random hidden graphs of fixed `n` and growing
/// `m`, recording query counts per type.
pub fn query_scaling_experiment(config: &ScalingConfig) -> Result<ScalingReport> {
    let mut rows = Vec::new();
    for &m in &config.m_values {
        for &seed in &config.seeds {
            let h = gen_random(config.n, config.r_min, config.r_max, m, false, seed)?;
            let mut oracle = OracleHandle::new(h, seed);
            let mut pipeline = CutPipelineConfig::new(config.epsilon);
            pipeline.beta = config.beta;
            let out = sparsify_cut(&mut oracle, &pipeline, seed)?;
            rows.push(ScalingRow {
                m,
                seed,
                queries: out.ledger,
                records: out.trace.records.len(),
                collected: out.trace.records.iter().map(|r| r.collected as u64).sum(),
                expected_edge_draws: expected_collection_draws(&out.trace),
            });
        }
    }
    let values: Vec<u64> = rows.iter().map(|r| r.queries.value).collect();
    let lo = values.iter().copied().min().unwrap_or(0) as f64;
    let hi = values.iter().copied().max().unwrap_or(0) as f64;
    let value_spread = if lo > 0.0 { (hi - lo) / lo } else { 0.0 };
    let edge_bound_ok = rows
        .iter()
        .all(|r| r.queries.edge as f64 <= 1.5 * r.expected_edge_draws + 20.0 * r.records as f64);
    Ok(ScalingReport {
        config: config.clone(),
        rows,
        value_spread,
        value_band_ok: value_spread < VALUE_BAND,
        edge_bound_ok,
    })
}
