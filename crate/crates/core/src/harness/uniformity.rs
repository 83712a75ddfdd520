use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodnessOfFit {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Pearson's chi-squared test of observed counts against bin probabilities.
///
/// Bins with zero probability are dropped; any count in such a bin makes
/// the p-value 0.
pub fn goodness_of_fit(counts: &[u64], probs: &[f64]) -> GoodnessOfFit {
    assert_eq!(counts.len(), probs.len(), "one probability per bin");
    let total: u64 = counts.iter().sum();
    let mass: f64 = probs.iter().sum();
    let mut statistic = 0.0;
    let mut bins = 0usize;
    let mut impossible = false;
    for (&c, &p) in counts.iter().zip(probs) {
        if p <= 0.0 {
            impossible |= c > 0;
            continue;
        }
        let expected = total as f64 * p / mass;
        statistic += (c as f64 - expected).powi(2) / expected;
        bins += 1;
    }
    let dof = bins.saturating_sub(1);
    let p_value = if impossible {
        0.0
    } else if dof == 0 {
        1.0
    } else {
        let chi = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
        chi.sf(statistic)
    };
    GoodnessOfFit {
        statistic,
        dof,
        p_value,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniformityReport {
    pub trials: u64,
    pub counts: Vec<u64>,
    pub frequencies: Vec<f64>,
    /// Largest over smallest count; infinite if some item never appeared.
    pub max_min_ratio: f64,
    pub fit: GoodnessOfFit,
}

impl UniformityReport {
    pub fn passes(&self, ratio_limit: f64, alpha: f64) -> bool {
        self.max_min_ratio <= ratio_limit && self.fit.p_value >= alpha
    }
}

/// Tallies `trials` calls of `draw` over items `0..support` and compares the
/// result with the uniform distribution. Draws outside the support panic.
pub fn uniformity_test(
    mut draw: impl FnMut(&mut ChaCha8Rng) -> usize,
    support: usize,
    trials: u64,
    seed: u64,
) -> UniformityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; support];
    for _ in 0..trials {
        counts[draw(&mut rng)] += 1;
    }
    uniformity_of_counts(counts)
}

/// The uniformity summary for counts gathered elsewhere.
pub fn uniformity_of_counts(counts: Vec<u64>) -> UniformityReport {
    let trials: u64 = counts.iter().sum();
    let max = counts.iter().copied().max().unwrap_or(0);
    let min = counts.iter().copied().min().unwrap_or(0);
    let max_min_ratio = if min == 0 {
        f64::INFINITY
    } else {
        max as f64 / min as f64
    };
    let probs = vec![1.0 / counts.len().max(1) as f64; counts.len()];
    let fit = goodness_of_fit(&counts, &probs);
    UniformityReport {
        trials,
        frequencies: counts.iter().map(|&c| c as f64 / trials.max(1) as f64).collect(),
        counts,
        max_min_ratio,
        fit,
    }
}
