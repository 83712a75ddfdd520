use rand::Rng;

use super::trace::WeightedSparsifier;
use crate::error::{Error, Result};
use crate::hypercore::{edge_strengths, Hypergraph};

/// Per-edge probabilities `min(1, w(e) * 3((d + 2) ln n + r) / (k_e eps^2))`,
/// aligned with `h.edges()`.
pub fn strength_probabilities(h: &Hypergraph, epsilon: f64, d: f64) -> Result<Vec<f64>> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} outside (0, 1)")));
    }
    let strengths = edge_strengths(h)?;
    let factor = oversampling_factor(h, epsilon, d);
    Ok(h.edges()
        .iter()
        .map(|e| (e.weight() * factor / strengths[&e.id()]).min(1.0))
        .collect())
}

/// `3((d + 2) ln n + r) / eps^2`.
pub fn oversampling_factor(h: &Hypergraph, epsilon: f64, d: f64) -> f64 {
    let n = h.n().max(1) as f64;
    3.0 * ((d + 2.0) * n.ln() + h.rank() as f64) / (epsilon * epsilon)
}

/// Independent strength-proportional sampling with full access to `h`;
/// each kept edge gets weight `w(e) / p_e`.
pub fn sample_by_strength_reference(h: &Hypergraph, epsilon: f64, d: f64, seed: u64) -> Result<WeightedSparsifier> {
    let probs = strength_probabilities(h, epsilon, d)?;
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
