use std::collections::HashSet;

use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};

use super::trace::{DraftEdge, RecursionTrace, SamplingRate, SparsifierDraft, TraceRecord};
use crate::error::{Error, Result};
use crate::hypercore::{EdgeId, VertexSubset};
use crate::oracle::{EdgeRecord, OracleHandle};
use crate::sfm::pseudo_min_cut;

/// Cap on weighted draws per traced cut unless overridden.
pub const DEFAULT_MAX_DRAWS: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMode {
    /// Unit weights: cut values are edge counts and `N ~ B(c, p)` is exact.
    Unit,
    /// Arbitrary positive weights, sampled with Poissonized draw counts.
    Weighted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoStrengthParams {
    pub epsilon: f64,
    /// Oversampling constant; the sampling rate at a cut of weight `c` is
    /// `min(1, beta / (epsilon^2 c))`.
    pub beta: f64,
    pub weights: WeightMode,
    /// Upper bound on the Poisson mean used in weighted mode.
    pub max_draws_per_record: u64,
}

impl PseudoStrengthParams {
    /// Defaults: `beta = 10 n^3`, unit weights.
    pub fn new(n: usize, epsilon: f64) -> Self {
        PseudoStrengthParams {
            epsilon,
            beta: 10.0 * (n as f64).powi(3),
            weights: WeightMode::Unit,
            max_draws_per_record: DEFAULT_MAX_DRAWS,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_weights(mut self, weights: WeightMode) -> Self {
        self.weights = weights;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {} outside (0, 1)",
                self.epsilon
            )));
        }
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("beta {} must be positive", self.beta)));
        }
        if self.max_draws_per_record == 0 {
            return Err(Error::InvalidParameter("max_draws_per_record must be positive".into()));
        }
        Ok(())
    }

    /// `min(1, beta / (epsilon^2 c))`, or 0 on an empty cut.
    pub fn rate(&self, cut_weight: f64) -> f64 {
        if cut_weight <= 0.0 {
            0.0
        } else {
            (self.beta / (self.epsilon * self.epsilon * cut_weight)).min(1.0)
        }
    }

    /// Poisson mean of sampling calls per cut in weighted mode.
    pub fn poisson_calls(&self) -> f64 {
        (self.beta / (self.epsilon * self.epsilon))
            .ceil()
            .min(self.max_draws_per_record as f64)
    }
}

/// Where the sampler gets crossing edges from.
pub trait CutEdgeSource {
    /// Performs one sampling call on the cut `(side, V \ side)`.
    fn draw(&mut self, oracle: &mut OracleHandle, side: &VertexSubset) -> Result<Vec<EdgeRecord>>;

    /// Edges returned per call.
    fn per_call(&self) -> u32;
}

/// Draws straight from the cut-edge oracle.
#[derive(Debug, Default, Clone, Copy)]
pub struct DirectEdges;

impl CutEdgeSource for DirectEdges {
    fn draw(&mut self, oracle: &mut OracleHandle, side: &VertexSubset) -> Result<Vec<EdgeRecord>> {
        Ok(vec![oracle.o_edge(side)?])
    }

    fn per_call(&self) -> u32 {
        1
    }
}

/// Samples until `target` distinct edges have been seen, returning them in
/// first-seen order along with the number of calls made.
pub fn collect_distinct<E: CutEdgeSource + ?Sized>(
    source: &mut E,
    oracle: &mut OracleHandle,
    side: &VertexSubset,
    target: usize,
) -> Result<(Vec<EdgeRecord>, u64)> {
    let mut seen = HashSet::with_capacity(target);
    let mut out = Vec::with_capacity(target);
    let mut calls = 0u64;
    while out.len() < target {
        calls += 1;
        for rec in source.draw(oracle, side)? {
            if out.len() < target && seen.insert(rec.id) {
                out.push(rec);
            }
        }
    }
    Ok((out, calls))
}

/// `N ~ B(c, p)` followed by [`collect_distinct`]: each of the `c` crossing
/// edges of a unit-weight cut ends up included with probability `p`.
pub fn draw_binomial_distinct<E: CutEdgeSource + ?Sized>(
    source: &mut E,
    oracle: &mut OracleHandle,
    side: &VertexSubset,
    c: u64,
    p: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<EdgeRecord>, u64)> {
    let n = Binomial::new(c, p)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?
        .sample(rng) as usize;
    collect_distinct(source, oracle, side, n)
}

/// Pseudo-strength sampling through the cut-value and cut-edge oracles.
pub fn sample_by_pseudo_strength(
    oracle: &mut OracleHandle,
    params: &PseudoStrengthParams,
    seed: u64,
) -> Result<(SparsifierDraft, RecursionTrace)> {
    sample_by_pseudo_strength_with(oracle, params, seed, &mut DirectEdges)
}

/// As [`sample_by_pseudo_strength`], with crossing edges supplied by `source`.
///
/// The recursion visits active sets depth first, `S` before `V' \ S`.
pub fn sample_by_pseudo_strength_with<E: CutEdgeSource + ?Sized>(
    oracle: &mut OracleHandle,
    params: &PseudoStrengthParams,
    seed: u64,
    source: &mut E,
) -> Result<(SparsifierDraft, RecursionTrace)> {
    params.validate()?;
    let n = oracle.n();
    let mut rng = crate::streams::rng(seed, crate::streams::SAMPLER);
    let mut draft = SparsifierDraft::new(n);
    let mut trace = RecursionTrace { n, records: Vec::new() };
    let mut stack = vec![VertexSubset::full(n)];

    while let Some(active) = stack.pop() {
        if active.len() < 2 {
            continue;
        }
        let cut = pseudo_min_cut(oracle, &active)?;
        let side = cut.side;
        let c = oracle.o_value(&side)?;

        let (rate, collected, draws) = match params.weights {
            WeightMode::Unit => {
                let count = c.round();
                if (c - count).abs() > 1e-9 {
                    return Err(Error::NonIntegralCut(c));
                }
                let p = params.rate(c);
                let (edges, calls) = draw_binomial_distinct(source, oracle, &side, count as u64, p, &mut rng)?;
                (SamplingRate::Binomial { p }, edges, calls)
            }
            WeightMode::Weighted => {
                let mean = params.poisson_calls();
                let calls = if c > 0.0 {
                    Poisson::new(mean)
                        .map_err(|e| Error::InvalidParameter(e.to_string()))?
                        .sample(&mut rng) as u64
                } else {
                    0
                };
                let mut seen: HashSet<EdgeId> = HashSet::new();
                let mut edges = Vec::new();
                for _ in 0..calls {
                    for rec in source.draw(oracle, &side)? {
                        if seen.insert(rec.id) {
                            edges.push(rec);
                        }
                    }
                }
                let rate = SamplingRate::Poisson {
                    mean: mean * source.per_call() as f64,
                };
                (rate, edges, calls)
            }
        };

        let index = trace.records.len();
        let collected_count = collected.len();
        for rec in collected {
            draft
                .edges
                .entry(rec.id)
                .or_insert_with(|| DraftEdge {
                    vertices: rec.vertices,
                    weight: rec.weight,
                    records: Default::default(),
                })
                .records
                .insert(index);
        }
        let rest = active.difference(&side);
        trace.records.push(TraceRecord {
            active,
            side: side.clone(),
            cut_weight: c,
            pseudo_value: cut.value,
            rate,
            collected: collected_count,
            draws,
        });
        stack.push(rest);
        stack.push(side);
    }
    Ok((draft, trace))
}
