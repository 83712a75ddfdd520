use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, VertexSubset, WordCuts, EXHAUSTIVE_LIMIT};

/// Largest vertex count for which every cut indicator is tried in the
/// spectral check.
pub const SPECTRAL_CUT_LIMIT: usize = 16;
/// Extra tolerance allowed on random-vector quadratic forms.
pub const VECTOR_SLACK: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutCheckMode {
    /// All `2^(n-1) - 1` cuts; requires `n <= 20`.
    Exhaustive,
    /// `cuts` random cuts, each vertex on either side with probability 1/2.
    Random { cuts: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutCheckReport {
    pub mode: String,
    pub cuts_checked: u64,
    /// `None` when some zero-weight cut has positive weight in the sparsifier.
    pub max_relative_error: Option<f64>,
    /// The side achieving the maximum error (or the offending zero cut).
    pub argmax_cut: Vec<usize>,
    pub zero_cut_mismatch: bool,
    pub epsilon: f64,
    pub passed: bool,
}

/// Error of one cut: relative when the true weight is positive, and either
/// 0 or infinite when it is zero.
fn cut_error(truth: f64, approx: f64) -> f64 {
    if truth > 0.0 {
        (approx - truth).abs() / truth
    } else if approx == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Keeps the larger error, breaking ties toward the smaller key.
fn worse(a: (f64, u64), b: (f64, u64)) -> (f64, u64) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn finish(mode: String, cuts: u64, worst: (f64, Vec<usize>), epsilon: f64) -> CutCheckReport {
    let (err, side) = worst;
    let mismatch = err.is_infinite();
    CutCheckReport {
        mode,
        cuts_checked: cuts,
        max_relative_error: if mismatch { None } else { Some(err) },
        argmax_cut: side,
        zero_cut_mismatch: mismatch,
        epsilon,
        passed: !mismatch && err <= epsilon,
    }
}

/// Compares every cut (or a random sample of cuts) of `sparse` against `truth`.
pub fn verify_cut(truth: &Hypergraph, sparse: &Hypergraph, epsilon: f64, mode: CutCheckMode) -> Result<CutCheckReport> {
    let n = truth.n();
    if sparse.n() != n {
        return Err(Error::VertexCountMismatch(n, sparse.n()));
    }
    match mode {
        CutCheckMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::SizeGuard {
                    what: "exhaustive cut check",
                    limit: EXHAUSTIVE_LIMIT,
                    got: n,
                });
            }
            if n < 2 {
                return Ok(finish("exhaustive".into(), 0, (0.0, Vec::new()), epsilon));
            }
            let a = WordCuts::new(truth).expect("n <= 20");
            let b = WordCuts::new(sparse).expect("n <= 20");
            // vertex n-1 never joins S, so each cut appears once
            let count = (1u64 << (n - 1)) - 1;
            let best = (1..=count)
                .into_par_iter()
                .map(|s| (cut_error(a.cut(s), b.cut(s)), s))
                .reduce(|| (0.0, u64::MAX), worse);
            let side = if best.1 == u64::MAX {
                Vec::new()
            } else {
                VertexSubset::from_mask(n, best.1).to_vec()
            };
            Ok(finish("exhaustive".into(), count, (best.0, side), epsilon))
        }
        CutCheckMode::Random { cuts, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = (0.0, Vec::new());
            let mut checked = 0;
            if n >= 2 {
                for _ in 0..cuts {
                    let s = loop {
                        let s = VertexSubset::from_vertices(n, (0..n).filter(|_| rng.random::<bool>()));
                        if !s.is_empty() && !s.is_full() {
                            break s;
                        }
                    };
                    checked += 1;
                    let err = cut_error(truth.cut_weight(&s), sparse.cut_weight(&s));
                    if err > worst.0 {
                        worst = (err, s.to_vec());
                    }
                }
            }
            Ok(finish(format!("random-{cuts}"), checked, worst, epsilon))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralCheckReport {
    /// Worst error over all cut indicators; absent for `n > 16`.
    /// `None` inside the option marks a zero-cut mismatch.
    pub cut_indicator_max_error: Option<Option<f64>>,
    pub random_vector_max_error: Option<f64>,
    pub trials: u64,
    pub epsilon: f64,
    pub vector_slack: f64,
    pub passed: bool,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

/// Compares hypergraph quadratic forms on cut indicators and on standard
/// normal vectors.
pub fn verify_spectral(
    truth: &Hypergraph,
    sparse: &Hypergraph,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<SpectralCheckReport> {
    let n = truth.n();
    if sparse.n() != n {
        return Err(Error::VertexCountMismatch(n, sparse.n()));
    }
    let cut_err = if n <= SPECTRAL_CUT_LIMIT {
        let rep = verify_cut(truth, sparse, epsilon, CutCheckMode::Exhaustive)?;
        Some(if rep.zero_cut_mismatch {
            f64::INFINITY
        } else {
            rep.max_relative_error.unwrap_or(0.0)
        })
    } else {
        None
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vec_err: f64 = 0.0;
    let mut x = vec![0.0; n];
    for _ in 0..trials {
        for xi in x.iter_mut() {
            *xi = rng.sample(StandardNormal);
        }
        let a = truth.laplacian_form(&x)?;
        let b = sparse.laplacian_form(&x)?;
        vec_err = vec_err.max(cut_error(a, b));
    }
    let passed = cut_err.is_none_or(|e| e <= epsilon) && vec_err <= epsilon + VECTOR_SLACK;
    Ok(SpectralCheckReport {
        cut_indicator_max_error: cut_err.map(finite),
        random_vector_max_error: finite(vec_err),
        trials,
        epsilon,
        vector_slack: VECTOR_SLACK,
        passed,
    })
}
