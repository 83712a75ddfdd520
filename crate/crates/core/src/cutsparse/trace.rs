use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{EdgeId, Hyperedge, Hypergraph, VertexSubset};

/// How edges of one traced cut were sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplingRate {
    /// `N ~ B(c, p)` followed by `N` distinct crossing edges: every crossing
    /// edge is kept independently with probability `p`.
    Binomial { p: f64 },
    /// `Poisson(mean)` weight-proportional draws, every distinct edge kept:
    /// an edge of weight `w` is kept with probability `1 - exp(-mean w / c)`.
    Poisson { mean: f64 },
}

impl SamplingRate {
    pub fn edge_probability(&self, weight: f64, cut_weight: f64) -> f64 {
        match *self {
            SamplingRate::Binomial { p } => p,
            SamplingRate::Poisson { mean } => {
                if cut_weight <= 0.0 {
                    0.0
                } else {
                    -(-mean * weight / cut_weight).exp_m1()
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    /// The vertex set `V'` this call worked on.
    pub active: VertexSubset,
    /// The pseudo min-cut side `S`, a nonempty proper subset of `active`.
    pub side: VertexSubset,
    /// Weight of the global cut `(S, V \ S)`.
    pub cut_weight: f64,
    pub pseudo_value: f64,
    pub rate: SamplingRate,
    /// Distinct edges collected at this record.
    pub collected: usize,
    /// Sampling calls spent at this record.
    pub draws: u64,
}

impl TraceRecord {
    /// Probability that this record collects an edge with the given vertex
    /// set and weight.
    pub fn edge_probability(&self, members: &VertexSubset, weight: f64) -> f64 {
        if members.intersects(&self.side) && !members.is_subset(&self.side) {
            self.rate.edge_probability(weight, self.cut_weight)
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecursionTrace {
    pub n: usize,
    pub records: Vec<TraceRecord>,
}

impl RecursionTrace {
    /// Checks the structural invariants: at most `n - 1` records, sides are
    /// nonempty proper subsets of their active sets, and active sets form a
    /// laminar family.
    pub fn is_well_formed(&self) -> bool {
        if self.records.len() > self.n.saturating_sub(1) {
            return false;
        }
        let split_ok = self
            .records
            .iter()
            .all(|r| !r.side.is_empty() && r.side.is_subset(&r.active) && r.side != r.active);
        let laminar = self.records.iter().enumerate().all(|(i, a)| {
            self.records[i + 1..].iter().all(|b| {
                !a.active.intersects(&b.active) || a.active.is_subset(&b.active) || b.active.is_subset(&a.active)
            })
        });
        split_ok && laminar
    }
}

/// Exact probability that a run with this trace sampled the edge:
/// `1 - prod_i (1 - p_i)` over records whose cut the edge crosses.
pub fn inclusion_probability(trace: &RecursionTrace, id: EdgeId, vertices: &[usize], weight: f64) -> Result<f64> {
    let members = VertexSubset::from_vertices(trace.n, vertices.iter().copied());
    let mut miss = 1.0;
    let mut relevant = false;
    for r in &trace.records {
        if members.intersects(&r.side) && !members.is_subset(&r.side) {
            relevant = true;
            miss *= 1.0 - r.rate.edge_probability(weight, r.cut_weight);
        }
    }
    let q = 1.0 - miss;
    if !relevant || q <= 0.0 {
        return Err(Error::UntracedEdge(id));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DraftEdge {
    pub vertices: Vec<usize>,
    pub weight: f64,
    /// Trace indices at which the edge was collected.
    pub records: BTreeSet<usize>,
}

/// Every distinct edge a sampling run collected.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsifierDraft {
    pub n: usize,
    pub edges: BTreeMap<EdgeId, DraftEdge>,
}

impl SparsifierDraft {
    pub fn new(n: usize) -> Self {
        SparsifierDraft {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// A reweighted sample together with the inclusion probability of each kept
/// edge.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedSparsifier {
    pub graph: Hypergraph,
    pub inclusion: BTreeMap<EdgeId, f64>,
}

impl WeightedSparsifier {
    /// Builds the sparsifier from `(edge, q)` pairs, giving each edge weight
    /// `w(e) / q`.
    pub fn from_probabilities(n: usize, kept: impl IntoIterator<Item = (Hyperedge, f64)>) -> Result<Self> {
        let mut edges = Vec::new();
        let mut inclusion = BTreeMap::new();
        for (e, q) in kept {
            if !(q > 0.0 && q <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "inclusion probability {q} for {:?}",
                    e.id()
                )));
            }
            edges.push(Hyperedge::new(e.id(), n, e.vertices(), e.weight() / q)?);
            inclusion.insert(e.id(), q);
        }
        Ok(WeightedSparsifier {
            graph: Hypergraph::from_edges(n, edges)?,
            inclusion,
        })
    }
}

/// Reweights every drafted edge by its reconstructed inclusion probability.
pub fn assign_weights(draft: &SparsifierDraft, trace: &RecursionTrace) -> Result<WeightedSparsifier> {
    let kept = draft
        .edges
        .iter()
        .map(|(&id, d)| {
            let q = inclusion_probability(trace, id, &d.vertices, d.weight)?;
            Ok((Hyperedge::new(id, draft.n, &d.vertices, d.weight)?, q))
        })
        .collect::<Result<Vec<_>>>()?;
    WeightedSparsifier::from_probabilities(draft.n, kept)
}
