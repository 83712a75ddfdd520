use std::collections::BTreeMap;

use super::{EdgeId, Hypergraph, VertexSubset};
use crate::error::{Error, Result};
use crate::sfm::{self, CutFunction};

/// Largest vertex count the exhaustive min-cut backend accepts.
pub const EXHAUSTIVE_LIMIT: usize = 20;
/// Largest vertex count for the brute-force pseudo strength oracle.
pub const PSEUDO_BRUTE_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinCutBackend {
    /// Enumerates all `2^(n-1) - 1` cuts.
    Exhaustive,
    /// Pendant-pair minimization of the cut function.
    Queyranne,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinCut {
    pub side: VertexSubset,
    pub value: f64,
}

/// Edge vertex sets packed into machine words, for graphs with `n <= 64`.
pub(crate) struct WordCuts {
    pub full: u64,
    pub edges: Vec<(u64, f64)>,
}

impl WordCuts {
    pub fn new(h: &Hypergraph) -> Option<Self> {
        let full = VertexSubset::full(h.n()).mask()?;
        let edges = h
            .edges()
            .iter()
            .map(|e| (e.members().mask().expect("same universe"), e.weight()))
            .collect();
        Some(WordCuts { full, edges })
    }

    #[inline]
    pub fn cut(&self, s: u64) -> f64 {
        let t = self.full & !s;
        self.edges
            .iter()
            .filter(|(e, _)| e & s != 0 && e & t != 0)
            .map(|(_, w)| w)
            .sum()
    }
}

pub fn min_cut(h: &Hypergraph, backend: MinCutBackend) -> Result<MinCut> {
    min_cut_with(h, backend, false)
}

/// Minimum cut over nonempty proper vertex subsets. With `require_positive`,
/// a disconnected input is an error instead of a legal zero-valued answer.
pub fn min_cut_with(h: &Hypergraph, backend: MinCutBackend, require_positive: bool) -> Result<MinCut> {
    let n = h.n();
    if n < 2 {
        return Err(Error::GroundTooSmall(n));
    }
    let cut = match backend {
        MinCutBackend::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::SizeGuard {
                    what: "exhaustive min cut",
                    limit: EXHAUSTIVE_LIMIT,
                    got: n,
                });
            }
            let words = WordCuts::new(h).expect("n <= 20");
            let mut best = (f64::INFINITY, 0u64);
            // vertex n-1 always stays outside, so each cut is seen once
            for s in 1..(1u64 << (n - 1)) {
                let v = words.cut(s);
                if v < best.0 {
                    best = (v, s);
                }
            }
            MinCut {
                side: VertexSubset::from_mask(n, best.1),
                value: best.0,
            }
        }
        MinCutBackend::Queyranne => {
            let mut f = CutFunction::new(h);
            let (side, value) = sfm::queyranne_min(&mut f, &h.vertex_set())?;
            MinCut { side, value }
        }
    };
    if require_positive && cut.value <= 0.0 {
        return Err(Error::Disconnected);
    }
    Ok(cut)
}

/// Exact edge strengths via recursive min-cut decomposition.
///
/// Every edge crossing the minimum cut of its current component gets the
/// running maximum of the cut values seen on the way down; the two sides are
/// then decomposed independently.
pub fn edge_strengths(h: &Hypergraph) -> Result<BTreeMap<EdgeId, f64>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![(h.vertex_set(), 0.0f64)];
    while let Some((set, inherited)) = stack.pop() {
        if set.len() < 2 {
            continue;
        }
        let comps = h.components_within(&set);
        if comps.len() > 1 {
            stack.extend(comps.into_iter().map(|c| (c, inherited)));
            continue;
        }
        let sub = h.induced(&set);
        if sub.graph.m() == 0 {
            continue;
        }
        let cut = min_cut(&sub.graph, MinCutBackend::Queyranne)?;
        let level = inherited.max(cut.value);
        for e in sub.graph.edges().iter().filter(|e| e.crosses(&cut.side)) {
            out.insert(e.id(), level);
        }
        let side = VertexSubset::from_vertices(h.n(), cut.side.iter().map(|i| sub.vertex_map[i]));
        let rest = set.difference(&side);
        stack.push((rest, level));
        stack.push((side, level));
    }
    debug_assert_eq!(out.len(), h.m());
    Ok(out)
}

/// `sum_e w(e) / k_e`, bounded above by `n - 1`.
pub fn strength_sum(h: &Hypergraph, strengths: &BTreeMap<EdgeId, f64>) -> f64 {
    h.edges().iter().map(|e| e.weight() / strengths[&e.id()]).sum()
}

/// Brute-force pseudo strengths of every edge, aligned with `h.edges()`.
///
/// For each vertex set `X` the pseudo min cut
/// `min_S 1/2 (w(d(S)) + w(d(X\S)) - w(d(X)))` is computed from ground-truth
/// cut values, and each edge takes the maximum over all `X` containing it.
pub fn pseudo_strengths_bruteforce(h: &Hypergraph) -> Result<Vec<f64>> {
    let n = h.n();
    if n > PSEUDO_BRUTE_LIMIT {
        return Err(Error::SizeGuard {
            what: "brute-force pseudo strength",
            limit: PSEUDO_BRUTE_LIMIT,
            got: n,
        });
    }
    let words = WordCuts::new(h).expect("n <= 16");
    let size = 1usize << n;
    let table: Vec<f64> = (0..size as u64).map(|s| words.cut(s)).collect();
    let mut pseudo_min = vec![f64::NEG_INFINITY; size];
    for x in 1..size {
        if x.count_ones() < 2 {
            continue;
        }
        let low = x & x.wrapping_neg();
        let rest = x ^ low;
        let mut best = f64::INFINITY;
        // S always holds the lowest member of X; Delta is symmetric in S <-> X\S
        let mut sub = rest;
        loop {
            let s = sub | low;
            if s != x {
                let d = 0.5 * (table[s] + table[x ^ s] - table[x]);
                best = best.min(d);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        pseudo_min[x] = best;
    }
    Ok(words
        .edges
        .iter()
        .map(|&(e, _)| {
            let e = e as usize;
            let free = (size - 1) & !e;
            let mut best = f64::NEG_INFINITY;
            let mut sub = free;
            loop {
                best = best.max(pseudo_min[sub | e]);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
            best
        })
        .collect())
}

pub fn pseudo_strength_bruteforce(h: &Hypergraph, id: EdgeId) -> Result<f64> {
    let idx = h
        .edges()
        .iter()
        .position(|e| e.id() == id)
        .ok_or_else(|| Error::InvalidParameter(format!("no edge {id:?}")))?;
    Ok(pseudo_strengths_bruteforce(h)?[idx])
}
