//! Cut sparsification by pseudo-strength sampling.
//!
//! The sampler recursively splits the vertex set along pseudo min-cuts,
//! samples edges of each global cut at a rate inversely proportional to its
//! weight, and records every cut so the exact inclusion probability of each
//! sampled edge can be rebuilt afterwards. A strength-based pass with full
//! access to the intermediate graph then shrinks it further.

mod reference;
mod sampler;
mod trace;

pub use reference::{oversampling_factor, sample_by_strength_reference, strength_probabilities};
pub use sampler::{
    collect_distinct, draw_binomial_distinct, sample_by_pseudo_strength, sample_by_pseudo_strength_with, CutEdgeSource,
    DirectEdges, PseudoStrengthParams, WeightMode, DEFAULT_MAX_DRAWS,
};
pub use trace::{
    assign_weights, inclusion_probability, DraftEdge, RecursionTrace, SamplingRate, SparsifierDraft, TraceRecord,
    WeightedSparsifier,
};

use crate::error::Result;
use crate::oracle::{OracleHandle, QueryLedger};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutPipelineConfig {
    pub epsilon: f64,
    /// Failure exponent of the strength-sampling pass.
    pub d: f64,
    /// Overrides the default oversampling constant `10 n^3`.
    pub beta: Option<f64>,
    pub weights: WeightMode,
}

impl CutPipelineConfig {
    pub fn new(epsilon: f64) -> Self {
        CutPipelineConfig {
            epsilon,
            d: 2.0,
            beta: None,
            weights: WeightMode::Unit,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub sparsifier: WeightedSparsifier,
    /// The reweighted sample before the final pass.
    pub intermediate: WeightedSparsifier,
    pub trace: RecursionTrace,
    /// Queries spent by this run.
    pub ledger: QueryLedger,
}

/// Pseudo-strength sampling at `eps / 3`, then strength sampling of the
/// materialized result at `eps / 3`.
pub fn sparsify_cut(oracle: &mut OracleHandle, config: &CutPipelineConfig, seed: u64) -> Result<PipelineOutput> {
    sparsify_cut_with(oracle, config, seed, &mut DirectEdges)
}

pub(crate) fn sparsify_cut_with<E: CutEdgeSource + ?Sized>(
    oracle: &mut OracleHandle,
    config: &CutPipelineConfig,
    seed: u64,
    source: &mut E,
) -> Result<PipelineOutput> {
    let stage = config.epsilon / 3.0;
    sparsify_staged(oracle, config, stage, stage, seed, source)
}

pub(crate) fn sparsify_staged<E: CutEdgeSource + ?Sized>(
    oracle: &mut OracleHandle,
    config: &CutPipelineConfig,
    sample_eps: f64,
    final_eps: f64,
    seed: u64,
    source: &mut E,
) -> Result<PipelineOutput> {
    let before = oracle.ledger();
    let mut params = PseudoStrengthParams::new(oracle.n(), sample_eps).with_weights(config.weights);
    if let Some(beta) = config.beta {
        params = params.with_beta(beta);
    }
    let (draft, trace) = sample_by_pseudo_strength_with(oracle, &params, seed, source)?;
    let intermediate = assign_weights(&draft, &trace)?;
    let sparsifier = sample_by_strength_reference(&intermediate.graph, final_eps, config.d, seed)?;
    Ok(PipelineOutput {
        sparsifier,
        intermediate,
        trace,
        ledger: oracle.ledger().since(&before),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::{pseudo_strengths_bruteforce, EdgeId, Hypergraph, VertexSubset};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    fn k4() -> Hypergraph {
        Hypergraph::unweighted(4, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]).unwrap()
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize, max_rank: usize) -> Hypergraph {
        let edges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let k = rng.random_range(2..=n.min(max_rank));
                rand::seq::index::sample(rng, n, k).into_vec()
            })
            .collect();
        Hypergraph::unweighted(n, edges).unwrap()
    }

    #[test]
    fn single_edge_run() {
        let h = Hypergraph::unweighted(3, [[0, 1, 2]]).unwrap();
        let mut o = OracleHandle::new(h, 1);
        let params = PseudoStrengthParams::new(3, 0.5);
        let (draft, trace) = sample_by_pseudo_strength(&mut o, &params, 1).unwrap();
        assert_eq!(draft.len(), 1);
        assert_eq!(trace.records.len(), 2);
        assert_eq!(trace.records[0].cut_weight, 1.0);
        assert_eq!(trace.records[0].rate, SamplingRate::Binomial { p: 1.0 });
        assert!(trace.is_well_formed());
    }

    #[test]
    fn saturated_runs_reproduce_the_graph() {
        let triangles = Hypergraph::unweighted(6, [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]]).unwrap();
        for h in [triangles, k4()] {
            let mut o = OracleHandle::new(h.clone(), 5);
            let params = PseudoStrengthParams::new(h.n(), 0.5);
            let (draft, trace) = sample_by_pseudo_strength(&mut o, &params, 5).unwrap();
            let sp = assign_weights(&draft, &trace).unwrap();
            assert_eq!(sp.graph, h);
            assert!(sp.inclusion.values().all(|&q| q == 1.0));
        }
    }

    #[test]
    fn monte_carlo_inclusion_matches_reconstruction() {
        let h = k4();
        let params = PseudoStrengthParams::new(4, 0.99).with_beta(2.0);
        let runs = 20000;
        let mut hits: HashMap<EdgeId, u32> = HashMap::new();
        let mut predicted: HashMap<EdgeId, Vec<f64>> = HashMap::new();
        for seed in 0..runs {
            let mut o = OracleHandle::new(h.clone(), seed);
            let (draft, trace) = sample_by_pseudo_strength(&mut o, &params, seed).unwrap();
            for e in h.edges() {
                let q = inclusion_probability(&trace, e.id(), e.vertices(), 1.0).unwrap();
                predicted.entry(e.id()).or_default().push(q);
            }
            for id in draft.edges.keys() {
                *hits.entry(*id).or_default() += 1;
            }
        }
        for e in h.edges() {
            let freq = hits.get(&e.id()).copied().unwrap_or(0) as f64 / runs as f64;
            let q: f64 = predicted[&e.id()].iter().sum::<f64>() / runs as f64;
            assert!(q < 1.0);
            assert!((freq - q).abs() <= 0.015, "edge {:?}: {freq} vs {q}", e.id());
        }
    }

    #[test]
    fn weighted_unbiased_total() {
        let h = Hypergraph::new(
            4,
            [
                (vec![0, 1], 2.0),
                (vec![1, 2, 3], 5.0),
                (vec![0, 3], 1.5),
                (vec![2, 3], 3.0),
            ],
        )
        .unwrap();
        let params = PseudoStrengthParams::new(4, 0.9)
            .with_beta(0.8)
            .with_weights(WeightMode::Weighted);
        let runs = 20000;
        let mut total = 0.0;
        for seed in 0..runs {
            let mut o = OracleHandle::new(h.clone(), seed);
            let (draft, trace) = sample_by_pseudo_strength(&mut o, &params, seed).unwrap();
            let sp = assign_weights(&draft, &trace).unwrap();
            for e in sp.graph.edges() {
                assert!(e.weight() >= h.edge(e.id()).unwrap().weight());
            }
            total += sp.graph.total_weight();
        }
        let mean = total / runs as f64;
        assert!((mean / h.total_weight() - 1.0).abs() <= 0.03, "{mean}");
    }

    #[test]
    fn unit_mode_rejects_fractional_cuts() {
        let h = Hypergraph::new(2, [(vec![0, 1], 0.5)]).unwrap();
        let mut o = OracleHandle::new(h, 0);
        let params = PseudoStrengthParams::new(2, 0.5);
        assert_eq!(
            sample_by_pseudo_strength(&mut o, &params, 0).unwrap_err(),
            crate::Error::NonIntegralCut(0.5)
        );
    }

    #[test]
    fn dedup_binomial_is_independent_bernoulli() {
        let h = Hypergraph::unweighted(5, [vec![0, 1], vec![0, 2], vec![0, 3, 4], vec![0, 4], vec![0, 1, 2]]).unwrap();
        let side = VertexSubset::singleton(5, 0);
        let mut o = OracleHandle::new(h, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let trials = 20_000;
        let p = 0.3;
        let mut counts = [0u32; 5];
        let mut both = 0u32;
        for _ in 0..trials {
            let (edges, _) = draw_binomial_distinct(&mut DirectEdges, &mut o, &side, 5, p, &mut rng).unwrap();
            for e in &edges {
                counts[e.id.0 as usize] += 1;
            }
            if edges.iter().any(|e| e.id.0 == 0) && edges.iter().any(|e| e.id.0 == 1) {
                both += 1;
            }
        }
        for c in counts {
            assert!((c as f64 / trials as f64 - p).abs() < 0.015);
        }
        assert!((both as f64 / trials as f64 - p * p).abs() < 0.01);
    }

    #[test]
    fn records_respect_pseudo_strength_floor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..20 {
            let n = rng.random_range(4..=7);
            let m = rng.random_range(3..=14);
            let h = random_graph(&mut rng, n, m, 4);
            let kp = pseudo_strengths_bruteforce(&h).unwrap();
            let mut o = OracleHandle::new(h.clone(), trial);
            let params = PseudoStrengthParams::new(n, 0.5);
            let (_, trace) = sample_by_pseudo_strength(&mut o, &params, trial).unwrap();
            assert!(trace.is_well_formed());
            for (i, e) in h.edges().iter().enumerate() {
                // the record that first separates e
                let first = trace
                    .records
                    .iter()
                    .find(|r| e.members().is_subset(&r.active) && e.crosses(&r.side));
                if let Some(r) = first {
                    assert!(r.cut_weight <= n as f64 * kp[i] + 1e-9);
                }
            }
        }
    }

    #[test]
    fn pipeline_uses_value_and_edge_queries_only() {
        let mut o = OracleHandle::new(k4(), 9);
        let out = sparsify_cut(&mut o, &CutPipelineConfig::new(0.5), 9).unwrap();
        assert_eq!(out.sparsifier.graph, k4());
        assert_eq!((out.ledger.nbr1, out.ledger.nbr2), (0, 0));
        assert!(out.ledger.value > 0 && out.ledger.edge > 0);
    }
}
