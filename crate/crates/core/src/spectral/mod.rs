//! Spectral sparsification from either oracle set.
//!
//! With pair-neighbor queries every pair `u, v` is sampled directly and an
//! edge's inclusion probability is rebuilt from estimated pair weights.
//! With cut-edge queries the pseudo-strength sampler runs with a much larger
//! oversampling constant, and a pair-weight pass on the materialized sample
//! shrinks the result. Resistances and clique strengths live in
//! [`resistance`] for offline checks only.

pub mod resistance;

use std::collections::{BTreeMap, HashMap};

use rand::Rng;

pub use resistance::{
    clique_expansion, effective_resistance, resistance_bound_check, resistance_profile, OrdinaryGraph,
    ResistanceBoundReport, ResistanceProfile,
};

use crate::cutsparse::{
    assign_weights, sample_by_pseudo_strength, PipelineOutput, PseudoStrengthParams, WeightMode, WeightedSparsifier,
};
use crate::error::{Error, Result};
use crate::hypercore::{EdgeId, Hyperedge, Hypergraph};
use crate::oracle::{OracleHandle, QueryLedger};
use crate::pairsim::{estimate_pair_weight, PairSampler};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralConfig {
    pub epsilon: f64,
    /// The constant `C` in the sampling rates.
    pub c: f64,
    pub weights: WeightMode,
}

impl SpectralConfig {
    pub fn new(epsilon: f64) -> Self {
        SpectralConfig {
            epsilon,
            c: 1.0,
            weights: WeightMode::Unit,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "epsilon {} outside (0, 1)",
                self.epsilon
            )));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidParameter(format!("C {} must be positive", self.c)));
        }
        Ok(())
    }
}

/// `C n ln n / eps^2`.
pub fn pair_oversampling(n: usize, epsilon: f64, c: f64) -> f64 {
    let n = n.max(2) as f64;
    c * n * n.ln() / (epsilon * epsilon)
}

/// Probability that `draws` weight-proportional draws from a pair of total
/// weight `pair_weight` include a specific edge of weight `weight`.
pub fn pair_inclusion(weight: f64, pair_weight: f64, draws: u64) -> f64 {
    if pair_weight <= weight {
        return 1.0;
    }
    let miss = (1.0 - weight / pair_weight).powf(draws as f64);
    1.0 - miss
}

/// Per-edge probabilities `min(1, w(e) C n ln n / (eps^2 min_{u,v in e} w(E({u,v}))))`
/// with full access to `h`, aligned with `h.edges()`.
pub fn pair_weight_probabilities(h: &Hypergraph, epsilon: f64, c: f64) -> Vec<f64> {
    let mut pair_weight: HashMap<(usize, usize), f64> = HashMap::new();
    for e in h.edges() {
        let vs = e.vertices();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                *pair_weight.entry((u, v)).or_insert(0.0) += e.weight();
            }
        }
    }
    let factor = pair_oversampling(h.n(), epsilon, c);
    h.edges()
        .iter()
        .map(|e| {
            let vs = e.vertices();
            let mut min_pair = f64::INFINITY;
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    min_pair = min_pair.min(pair_weight[&(u, v)]);
                }
            }
            (e.weight() * factor / min_pair).min(1.0)
        })
        .collect()
}

/// Independent pair-weight sampling of a materialized hypergraph.
pub fn spectral_resparsify(h: &Hypergraph, epsilon: f64, c: f64, seed: u64) -> Result<WeightedSparsifier> {
    let probs = pair_weight_probabilities(h, epsilon, c);
    let mut rng = crate::streams::rng(seed, crate::streams::RESAMPLE);
    let kept: Vec<_> = h
        .edges()
        .iter()
        .zip(probs)
        .filter(|&(_, p)| p >= 1.0 || rng.random::<f64>() < p)
        .map(|(e, p)| (e.clone(), p))
        .collect();
    WeightedSparsifier::from_probabilities(h.n(), kept)
}

#[derive(Debug, Clone)]
pub struct SpectralOutput {
    pub sparsifier: WeightedSparsifier,
    /// Pair-neighbor draws per vertex pair.
    pub draws_per_pair: u64,
    pub ledger: QueryLedger,
}

/// Spectral sparsification from cut-value and pair-neighbor queries.
///
/// Each pair with a nonzero estimated weight gets `ceil(C n ln n / eps^2)`
/// pair draws; an edge drawn anywhere is kept with weight `w(e) / q_e`, where
/// `q_e` combines the per-pair with-replacement inclusion probabilities
/// computed from the estimates (taken at `eps / 5`). All randomness comes
/// from the oracle's stream.
pub fn spectral_sample_nbr2(oracle: &mut OracleHandle, config: &SpectralConfig) -> Result<SpectralOutput> {
    config.validate()?;
    let before = oracle.ledger();
    let n = oracle.n();
    let draws = pair_oversampling(n, config.epsilon, config.c).ceil() as u64;
    let xi = PairSampler::pipeline_xi(n);
    let stage = config.epsilon / 5.0;

    let mut estimates: HashMap<(usize, usize), f64> = HashMap::new();
    let mut seen: BTreeMap<EdgeId, (Vec<usize>, f64)> = BTreeMap::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let est = estimate_pair_weight(oracle, u, v, stage, xi)?;
            estimates.insert((u, v), est.estimate);
            if est.estimate <= 0.0 {
                continue;
            }
            for _ in 0..draws {
                if let Some(e) = oracle.o_nbr2(u, v)? {
                    seen.entry(e.id).or_insert((e.vertices, e.weight));
                }
            }
        }
    }
    let kept = seen
        .into_iter()
        .map(|(id, (vs, w))| {
            let mut miss = 1.0;
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    let est = estimates[&(u, v)];
                    if est <= 0.0 {
                        return Err(Error::EstimatorFailure(est));
                    }
                    miss *= 1.0 - pair_inclusion(w, est, draws);
                }
            }
            let q = (1.0 - miss).clamp(f64::MIN_POSITIVE, 1.0);
            Ok((Hyperedge::new(id, n, &vs, w)?, q))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralOutput {
        sparsifier: WeightedSparsifier::from_probabilities(n, kept)?,
        draws_per_pair: draws,
        ledger: oracle.ledger().since(&before),
    })
}

/// Spectral sparsification from cut-value and cut-edge queries.
///
/// Pseudo-strength sampling with `beta = C n^7` at `eps / 5`, then
/// [`spectral_resparsify`] at `eps / 5` on the reweighted sample.
pub fn spectral_sample_edge(oracle: &mut OracleHandle, config: &SpectralConfig, seed: u64) -> Result<PipelineOutput> {
    config.validate()?;
    let before = oracle.ledger();
    let n = oracle.n();
    let stage = config.epsilon / 5.0;
    let params = PseudoStrengthParams::new(n, stage)
        .with_beta(config.c * (n as f64).powi(7))
        .with_weights(config.weights);
    let (draft, trace) = sample_by_pseudo_strength(oracle, &params, seed)?;
    let intermediate = assign_weights(&draft, &trace)?;
    let sparsifier = spectral_resparsify(&intermediate.graph, stage, config.c, seed)?;
    Ok(PipelineOutput {
        sparsifier,
        intermediate,
        trace,
        ledger: oracle.ledger().since(&before),
    })
}
