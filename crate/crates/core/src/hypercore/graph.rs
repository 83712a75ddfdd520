use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::VertexSubset;
use crate::error::{Error, Result};

/// Stable identifier of a hyperedge. Parallel edges differ only by id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub u64);

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    id: EdgeId,
    vertices: Vec<usize>,
    members: VertexSubset,
    weight: f64,
}

impl Hyperedge {
    pub fn new(id: EdgeId, n: usize, vertices: &[usize], weight: f64) -> Result<Self> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::BadWeight(weight));
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < 2 {
            return Err(Error::EdgeTooSmall(sorted.len()));
        }
        if let Some(&v) = sorted.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let members = VertexSubset::from_vertices(n, sorted.iter().copied());
        Ok(Hyperedge {
            id,
            vertices: sorted,
            members,
            weight,
        })
    }

    pub fn id(&self) -> EdgeId {
        self.id
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn members(&self) -> &VertexSubset {
        &self.members
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Whether the edge meets both `s` and its complement in `0..n`.
    pub fn crosses(&self, s: &VertexSubset) -> bool {
        self.members.intersects(s) && !self.members.is_subset(s)
    }
}

/// An immutable weighted hypergraph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
}

/// An induced sub-hypergraph together with the map back to parent indices.
#[derive(Debug, Clone)]
pub struct Induced {
    pub graph: Hypergraph,
    /// `vertex_map[i]` is the parent index of local vertex `i`.
    pub vertex_map: Vec<usize>,
}

impl Hypergraph {
    /// Builds a hypergraph from `(vertices, weight)` pairs; ids follow list order.
    pub fn new<V: AsRef<[usize]>>(n: usize, edges: impl IntoIterator<Item = (V, f64)>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, (vs, w))| Hyperedge::new(EdgeId(i as u64), n, vs.as_ref(), w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypergraph { n, edges })
    }

    /// Unit-weight convenience constructor.
    pub fn unweighted<V: AsRef<[usize]>>(n: usize, edges: impl IntoIterator<Item = V>) -> Result<Self> {
        Self::new(n, edges.into_iter().map(|e| (e, 1.0)))
    }

    /// Assembles a hypergraph from already-identified edges.
    pub fn from_edges(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if e.members.universe() != n {
                let v = e.vertices.iter().copied().find(|&v| v >= n).unwrap_or(n);
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if !seen.insert(e.id) {
                return Err(Error::DuplicateEdgeId(e.id));
            }
        }
        Ok(Hypergraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Hyperedge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Maximum edge size (0 for an edgeless graph).
    pub fn rank(&self) -> usize {
        self.edges.iter().map(Hyperedge::size).max().unwrap_or(0)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(Hyperedge::weight).sum()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight == 1.0)
    }

    pub fn vertex_set(&self) -> VertexSubset {
        VertexSubset::full(self.n)
    }

    /// Total weight of edges meeting both `s` and its complement.
    pub fn cut_weight(&self, s: &VertexSubset) -> f64 {
        self.edges.iter().filter(|e| e.crosses(s)).map(|e| e.weight).sum()
    }

    pub fn crossing_edges(&self, s: &VertexSubset) -> Vec<EdgeId> {
        self.edges.iter().filter(|e| e.crosses(s)).map(|e| e.id).collect()
    }

    /// The sub-hypergraph on `x`, keeping exactly the edges contained in `x`.
    pub fn induced(&self, x: &VertexSubset) -> Induced {
        let vertex_map = x.to_vec();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertex_map.iter().enumerate() {
            local[v] = i;
        }
        let k = vertex_map.len();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.members.is_subset(x))
            .map(|e| {
                let vs: Vec<usize> = e.vertices.iter().map(|&v| local[v]).collect();
                Hyperedge {
                    id: e.id,
                    members: VertexSubset::from_vertices(k, vs.iter().copied()),
                    vertices: vs,
                    weight: e.weight,
                }
            })
            .collect();
        Induced {
            graph: Hypergraph { n: k, edges },
            vertex_map,
        }
    }

    /// `sum_e w(e) * max_{u,v in e} (x_u - x_v)^2`.
    pub fn laplacian_form(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self
            .edges
            .iter()
            .map(|e| {
                let (lo, hi) = e
                    .vertices
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                        (lo.min(x[v]), hi.max(x[v]))
                    });
                e.weight * (hi - lo) * (hi - lo)
            })
            .sum())
    }

    /// Connected components of the vertex set `within`, using only edges
    /// contained in `within`. Components are ordered by smallest member.
    pub fn components_within(&self, within: &VertexSubset) -> Vec<VertexSubset> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        for e in self.edges.iter().filter(|e| e.members.is_subset(within)) {
            let root = find(&mut parent, e.vertices[0]);
            for &v in &e.vertices[1..] {
                let r = find(&mut parent, v);
                if r != root {
                    let (a, b) = (root.min(r), root.max(r));
                    parent[b] = a;
                }
            }
        }
        let mut comps: Vec<(usize, VertexSubset)> = Vec::new();
        for v in within.iter() {
            let r = find(&mut parent, v);
            match comps.iter_mut().find(|(root, _)| *root == r) {
                Some((_, c)) => c.insert(v),
                None => comps.push((r, VertexSubset::singleton(self.n, v))),
            }
        }
        let mut out: Vec<VertexSubset> = comps.into_iter().map(|(_, c)| c).collect();
        out.sort_by_key(|c| c.first());
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components_within(&self.vertex_set()).len() == 1
    }
}
