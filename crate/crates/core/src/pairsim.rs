//! Cut-edge sampling simulated from pair-neighbor queries.
//!
//! [`estimate_pair_weight`] recovers `w(E({u,v}))`, the weight of edges
//! containing both `u` and `v`, from three cut values and a batch of pair
//! queries. [`PairSampler`] uses those estimates to pick a crossing pair and
//! then a random edge through it, accepting with probability
//! `1 / (|e ∩ S| |e ∩ S̄|)` so that every crossing edge is reached at a rate
//! close to proportional to its weight.

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::cutsparse::{sparsify_staged, CutEdgeSource, CutPipelineConfig, PipelineOutput};
use crate::error::{Error, Result};
use crate::hypercore::VertexSubset;
use crate::oracle::{EdgeRecord, OracleHandle};

#[derive(Debug, Clone, PartialEq)]
pub struct PairEstimate {
    pub u: usize,
    pub v: usize,
    /// Estimate of `w(E({u,v}))`.
    pub estimate: f64,
    /// `d({u}) + d({v}) - d({u,v})`, the weight of edges through the pair plus
    /// the weight of edges equal to `{u,v}`.
    pub two_delta: f64,
    /// Fraction of pair draws that were exactly `{u,v}`.
    pub alpha_hat: f64,
    pub epsilon: f64,
    pub xi: f64,
    pub draws: u64,
}

/// `ceil(12 ln(2 / xi) / eps^2)`.
pub fn pair_draw_count(epsilon: f64, xi: f64) -> u64 {
    (12.0 * (2.0 / xi).ln() / (epsilon * epsilon)).ceil() as u64
}

fn check_unit_interval(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} {x} outside (0, 1)")))
    }
}

/// `2 Delta_{u,v}({u})` from three cut-value queries.
pub fn pair_two_delta(oracle: &mut OracleHandle, u: usize, v: usize) -> Result<f64> {
    let n = oracle.n();
    let du = oracle.o_value(&VertexSubset::singleton(n, u))?;
    let dv = oracle.o_value(&VertexSubset::singleton(n, v))?;
    let duv = oracle.o_value(&VertexSubset::from_vertices(n, [u, v]))?;
    Ok(du + dv - duv)
}

/// Estimates `w(E({u,v}))` within `(1 ± eps)` with probability `1 - xi`.
pub fn estimate_pair_weight(
    oracle: &mut OracleHandle,
    u: usize,
    v: usize,
    epsilon: f64,
    xi: f64,
) -> Result<PairEstimate> {
    if u == v {
        return Err(Error::SamePair(u));
    }
    check_unit_interval("epsilon", epsilon)?;
    check_unit_interval("xi", xi)?;
    let two_delta = pair_two_delta(oracle, u, v)?;
    let mut out = PairEstimate {
        u,
        v,
        estimate: 0.0,
        two_delta,
        alpha_hat: 0.0,
        epsilon,
        xi,
        draws: 0,
    };
    if two_delta <= 1e-12 {
        return Ok(out);
    }
    let k = pair_draw_count(epsilon, xi);
    let mut exact = 0u64;
    for _ in 0..k {
        if let Some(e) = oracle.o_nbr2(u, v)? {
            if e.vertices.len() == 2 {
                exact += 1;
            }
        }
    }
    out.draws = k;
    out.alpha_hat = exact as f64 / k as f64;
    out.estimate = two_delta / (1.0 + out.alpha_hat);
    Ok(out)
}

/// Outcome of one accepted rejection-sampling draw.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDraw {
    pub edge: EdgeRecord,
    pub rounds: u64,
}

/// Pair estimates for one cut, as a cumulative table over crossing pairs.
struct CutPairs {
    side: VertexSubset,
    pairs: Vec<(usize, usize)>,
    cumulative: Vec<f64>,
}

/// Rejection sampler over crossing edges driven by pair queries.
///
/// Pair estimates are computed on first use and reused for every later cut
/// and rejection round.
pub struct PairSampler {
    epsilon: f64,
    xi: f64,
    rng: ChaCha8Rng,
    estimates: HashMap<(usize, usize), PairEstimate>,
    current: Option<CutPairs>,
    rounds: u64,
    accepted: u64,
}

impl PairSampler {
    pub fn new(epsilon: f64, xi: f64, seed: u64) -> Result<Self> {
        check_unit_interval("epsilon", epsilon)?;
        check_unit_interval("xi", xi)?;
        Ok(PairSampler {
            epsilon,
            xi,
            rng: crate::streams::rng(seed, crate::streams::PAIRS),
            estimates: HashMap::new(),
            current: None,
            rounds: 0,
            accepted: 0,
        })
    }

    /// `xi = n^-20`, the failure rate used inside the pipelines.
    pub fn pipeline_xi(n: usize) -> f64 {
        (n.max(2) as f64).powi(-20)
    }

    /// Cached estimate of `w(E({u,v}))`.
    pub fn estimate(&mut self, oracle: &mut OracleHandle, u: usize, v: usize) -> Result<f64> {
        let key = (u.min(v), u.max(v));
        if let Some(e) = self.estimates.get(&key) {
            return Ok(e.estimate);
        }
        let e = estimate_pair_weight(oracle, key.0, key.1, self.epsilon, self.xi)?;
        let value = e.estimate;
        self.estimates.insert(key, e);
        Ok(value)
    }

    pub fn estimates(&self) -> impl Iterator<Item = &PairEstimate> {
        self.estimates.values()
    }

    /// Mean rejection rounds per accepted draw so far.
    pub fn mean_rounds(&self) -> f64 {
        if self.accepted == 0 {
            0.0
        } else {
            self.rounds as f64 / self.accepted as f64
        }
    }

    fn prepare(&mut self, oracle: &mut OracleHandle, side: &VertexSubset) -> Result<()> {
        if matches!(&self.current, Some(c) if &c.side == side) {
            return Ok(());
        }
        let n = oracle.n();
        if side.universe() != n {
            return Err(Error::VertexCountMismatch(side.universe(), n));
        }
        let other = side.complement();
        let mut pairs = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        for u in side.iter() {
            for v in other.iter() {
                let w = self.estimate(oracle, u, v)?;
                if w > 0.0 {
                    acc += w;
                    pairs.push((u, v));
                    cumulative.push(acc);
                }
            }
        }
        if pairs.is_empty() {
            let c = oracle.o_value(side)?;
            return Err(if c > 0.0 {
                Error::EstimatorFailure(c)
            } else {
                Error::EmptyCut
            });
        }
        self.current = Some(CutPairs {
            side: side.clone(),
            pairs,
            cumulative,
        });
        Ok(())
    }

    /// One accepted crossing edge of `(side, V \ side)`.
    pub fn sample(&mut self, oracle: &mut OracleHandle, side: &VertexSubset) -> Result<PairDraw> {
        self.prepare(oracle, side)?;
        let mut rounds = 0u64;
        loop {
            rounds += 1;
            let cut = self.current.as_ref().expect("prepared");
            let total = *cut.cumulative.last().expect("nonempty");
            let x = self.rng.random::<f64>() * total;
            let pos = cut.cumulative.partition_point(|&c| c <= x).min(cut.pairs.len() - 1);
            let (u, v) = cut.pairs[pos];
            let Some(edge) = oracle.o_nbr2(u, v)? else { continue };
            let inside = edge.vertices.iter().filter(|&&w| side.contains(w)).count();
            let outside = edge.vertices.len() - inside;
            let accept = 1.0 / (inside * outside) as f64;
            if self.rng.random::<f64>() < accept {
                self.rounds += rounds;
                self.accepted += 1;
                return Ok(PairDraw { edge, rounds });
            }
        }
    }
}

/// Each simulated cut-edge query runs the rejection sampler twice.
impl CutEdgeSource for PairSampler {
    fn draw(&mut self, oracle: &mut OracleHandle, side: &VertexSubset) -> Result<Vec<EdgeRecord>> {
        let a = self.sample(oracle, side)?.edge;
        let b = self.sample(oracle, side)?.edge;
        Ok(vec![a, b])
    }

    fn per_call(&self) -> u32 {
        2
    }
}

/// A single crossing edge sampled with fresh pair estimates at `xi = n^-20`.
pub fn sample_cut_edge_via_pairs(
    oracle: &mut OracleHandle,
    side: &VertexSubset,
    epsilon: f64,
    seed: u64,
) -> Result<EdgeRecord> {
    let xi = PairSampler::pipeline_xi(oracle.n());
    let mut sampler = PairSampler::new(epsilon, xi, seed)?;
    Ok(sampler.sample(oracle, side)?.edge)
}

/// Cut sparsification from cut-value and pair-neighbor queries only.
///
/// Pseudo-strength sampling, pair estimation and the final strength pass
/// each run at `eps / 5`.
pub fn sparsify_cut_nbr2(oracle: &mut OracleHandle, config: &CutPipelineConfig, seed: u64) -> Result<PipelineOutput> {
    let stage = config.epsilon / 5.0;
    let xi = PairSampler::pipeline_xi(oracle.n());
    let mut sampler = PairSampler::new(stage, xi, seed)?;
    sparsify_staged(oracle, config, stage, stage, seed, &mut sampler)
}
