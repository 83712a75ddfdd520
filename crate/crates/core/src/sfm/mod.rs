//! Minimization of symmetric submodular set functions from value access.
//!
//! Both functions minimized here, the hypergraph cut function and the pseudo
//! cut `1/2 (w(d(S)) + w(d(X\S)) - w(d(X)))`, are symmetric, so Queyranne's
//! pendant-pair algorithm finds an exact minimizer with `O(k^3)` evaluations.

mod pseudo;
mod queyranne;

pub use pseudo::{pseudo_min_cut, PseudoCutFunction, PseudoMinCut};
pub use queyranne::queyranne_min;

use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, VertexSubset};

/// Absolute tolerance used when comparing function values.
pub const VALUE_TOLERANCE: f64 = 1e-9;
/// Largest ground set [`brute_min`] will enumerate.
pub const BRUTE_LIMIT: usize = 16;

pub trait SetFunction {
    /// Evaluates `f(S)` for `S` inside the ground set.
    fn evaluate(&mut self, s: &VertexSubset) -> Result<f64>;
    /// Evaluations performed so far.
    fn evaluations(&self) -> u64;
}

/// A set function backed by a closure, with an evaluation counter.
pub struct EvaluationFunction<F> {
    f: F,
    count: u64,
}

impl<F: FnMut(&VertexSubset) -> f64> EvaluationFunction<F> {
    pub fn new(f: F) -> Self {
        EvaluationFunction { f, count: 0 }
    }
}

impl<F: FnMut(&VertexSubset) -> f64> SetFunction for EvaluationFunction<F> {
    fn evaluate(&mut self, s: &VertexSubset) -> Result<f64> {
        self.count += 1;
        Ok((self.f)(s))
    }

    fn evaluations(&self) -> u64 {
        self.count
    }
}

/// The cut function of a fully known hypergraph.
pub struct CutFunction<'a> {
    graph: &'a Hypergraph,
    count: u64,
}

impl<'a> CutFunction<'a> {
    pub fn new(graph: &'a Hypergraph) -> Self {
        CutFunction { graph, count: 0 }
    }
}

impl SetFunction for CutFunction<'_> {
    fn evaluate(&mut self, s: &VertexSubset) -> Result<f64> {
        self.count += 1;
        Ok(self.graph.cut_weight(s))
    }

    fn evaluations(&self) -> u64 {
        self.count
    }
}

/// Exhaustive minimizer over nonempty proper subsets of `ground`.
///
/// Ties within [`VALUE_TOLERANCE`] go to the lexicographically smallest
/// subset (compared as ascending vertex lists).
pub fn brute_min<F: SetFunction + ?Sized>(f: &mut F, ground: &VertexSubset) -> Result<(VertexSubset, f64)> {
    let elems = ground.to_vec();
    let k = elems.len();
    if k > BRUTE_LIMIT {
        return Err(Error::SizeGuard {
            what: "brute-force minimization",
            limit: BRUTE_LIMIT,
            got: k,
        });
    }
    if k < 2 {
        return Err(Error::GroundTooSmall(k));
    }
    let mut best: Option<(Vec<usize>, VertexSubset, f64)> = None;
    for mask in 1u32..((1u32 << k) - 1) {
        let members: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| elems[i]).collect();
        let s = VertexSubset::from_vertices(ground.universe(), members.iter().copied());
        let v = f.evaluate(&s)?;
        let better = match &best {
            None => true,
            Some((lex, _, bv)) => v < bv - VALUE_TOLERANCE || ((v - bv).abs() <= VALUE_TOLERANCE && members < *lex),
        };
        if better {
            best = Some((members, s, v));
        }
    }
    let (_, s, v) = best.expect("k >= 2 gives at least one candidate");
    Ok((s, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::OracleHandle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn path() -> Hypergraph {
        Hypergraph::unweighted(3, [[0, 1], [1, 2]]).unwrap()
    }

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
    fn brute_min_examples() {
        let h = path();
        let (s, v) = brute_min(&mut CutFunction::new(&h), &h.vertex_set()).unwrap();
        assert_eq!((s.to_vec(), v), (vec![0], 1.0));

        let mut zero = EvaluationFunction::new(|_: &VertexSubset| 0.0);
        let (s, v) = brute_min(&mut zero, &VertexSubset::full(5)).unwrap();
        assert_eq!((s.to_vec(), v), (vec![0], 0.0));
        assert_eq!(zero.evaluations(), 30);

        let single = Hypergraph::unweighted(3, [[0, 1, 2]]).unwrap();
        let mut oracle = OracleHandle::new(single, 0);
        let x = VertexSubset::from_vertices(3, [0, 1]);
        let mut f = PseudoCutFunction::new(&mut oracle, x.clone()).unwrap();
        let (s, v) = brute_min(&mut f, &x).unwrap();
        assert_eq!((s.to_vec(), v), (vec![0], 0.5));
    }

    #[test]
    fn brute_min_guards() {
        let mut zero = EvaluationFunction::new(|_: &VertexSubset| 0.0);
        assert!(matches!(
            brute_min(&mut zero, &VertexSubset::full(17)),
            Err(Error::SizeGuard { .. })
        ));
        assert!(matches!(
            brute_min(&mut zero, &VertexSubset::singleton(4, 2)),
            Err(Error::GroundTooSmall(1))
        ));
    }

    #[test]
    fn queyranne_examples() {
        let h = path();
        assert_eq!(
            queyranne_min(&mut CutFunction::new(&h), &h.vertex_set()).unwrap().1,
            1.0
        );
        let h = k4();
        assert_eq!(
            queyranne_min(&mut CutFunction::new(&h), &h.vertex_set()).unwrap().1,
            3.0
        );
        assert!(matches!(
            queyranne_min(&mut CutFunction::new(&h), &VertexSubset::singleton(4, 0)),
            Err(Error::GroundTooSmall(1))
        ));
    }

    #[test]
    fn queyranne_matches_brute_on_pseudo_cuts() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for trial in 0..200 {
            let n = rng.random_range(3..=10);
            let m = rng.random_range(1..=25);
            let h = random_graph(&mut rng, n, m, 4);
            let x = loop {
                let mask = rng.random_range(0..(1u64 << n));
                if mask.count_ones() >= 2 {
                    break VertexSubset::from_mask(n, mask);
                }
            };
            let mut oracle = OracleHandle::new(h.clone(), trial);
            let mut f = PseudoCutFunction::new(&mut oracle, x.clone()).unwrap();
            let (_, fast) = queyranne_min(&mut f, &x).unwrap();
            let (_, slow) = brute_min(&mut f, &x).unwrap();
            assert_eq!(fast, slow, "trial {trial}");
        }
    }

    #[test]
    fn pseudo_cut_is_symmetric_and_submodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..30 {
            let n = rng.random_range(3..=7);
            let m = rng.random_range(1..=15);
            let h = random_graph(&mut rng, n, m, 5);
            let xmask = loop {
                let mask = rng.random_range(0..(1u64 << n));
                if (2..=6).contains(&mask.count_ones()) {
                    break mask;
                }
            };
            let x = VertexSubset::from_mask(n, xmask);
            let mut oracle = OracleHandle::new(h.clone(), 0);
            let mut f = PseudoCutFunction::new(&mut oracle, x.clone()).unwrap();
            let subs: Vec<u64> = (0..(1u64 << n)).filter(|s| s & !xmask == 0).collect();
            let vals: std::collections::HashMap<u64, f64> = subs
                .iter()
                .map(|&s| (s, f.evaluate(&VertexSubset::from_mask(n, s)).unwrap()))
                .collect();
            for &s in &subs {
                assert_eq!(vals[&s], vals[&(xmask ^ s)]);
                // upper bound: edges meeting both S and X\S
                let bound: f64 = h
                    .edges()
                    .iter()
                    .filter(|e| {
                        let em = e.members().mask().unwrap();
                        em & s != 0 && em & (xmask ^ s) != 0
                    })
                    .map(|e| e.weight())
                    .sum();
                assert!(vals[&s] <= bound + 1e-12);
                for &t in &subs {
                    assert!(vals[&s] + vals[&t] >= vals[&(s | t)] + vals[&(s & t)] - 1e-12);
                }
            }
        }
    }
}
