use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::hypercore::{edge_strengths, Hypergraph};

/// A weighted ordinary graph with parallel edges merged.
#[derive(Debug, Clone, PartialEq)]
pub struct OrdinaryGraph {
    n: usize,
    /// `(u, v) -> weight` with `u < v`.
    edges: BTreeMap<(usize, usize), f64>,
}

impl OrdinaryGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut g = OrdinaryGraph {
            n,
            edges: BTreeMap::new(),
        };
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::EdgeTooSmall(1));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::BadWeight(w));
            }
            *g.edges.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0.0)
    }

    /// The same graph as a rank-2 hypergraph, one edge per merged pair.
    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph::new(self.n, self.edges.iter().map(|(&(u, v), &w)| ([u, v], w))).expect("validated on construction")
    }

    fn component_of(&self, start: usize) -> Vec<usize> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Replaces each hyperedge `e` by a clique on its vertices, every pair
/// carrying weight `w(e)`; pairs shared by several hyperedges add up.
pub fn clique_expansion(h: &Hypergraph) -> OrdinaryGraph {
    let mut pairs = Vec::new();
    for e in h.edges() {
        let vs = e.vertices();
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                pairs.push((u, v, e.weight()));
            }
        }
    }
    OrdinaryGraph::new(h.n(), pairs).expect("hyperedges are valid")
}

/// Effective resistance between `u` and `v`, by a Cholesky solve of the
/// Laplacian of their component grounded at `v`.
pub fn effective_resistance(g: &OrdinaryGraph, u: usize, v: usize) -> Result<f64> {
    let n = g.n();
    for x in [u, v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if u == v {
        return Ok(0.0);
    }
    let comp = g.component_of(u);
    if comp.binary_search(&v).is_err() {
        return Err(Error::DisconnectedPair(u, v));
    }
    // local indices with the ground vertex v removed
    let mut local = vec![usize::MAX; n];
    let mut k = 0;
    for &x in &comp {
        if x != v {
            local[x] = k;
            k += 1;
        }
    }
    let mut lap = DMatrix::<f64>::zeros(k, k);
    for (a, b, w) in g.edges() {
        if local[a] == usize::MAX && a != v || local[b] == usize::MAX && b != v {
            continue;
        }
        let (ia, ib) = (local[a], local[b]);
        if a != v {
            lap[(ia, ia)] += w;
        }
        if b != v {
            lap[(ib, ib)] += w;
        }
        if a != v && b != v {
            lap[(ia, ib)] -= w;
            lap[(ib, ia)] -= w;
        }
    }
    let mut rhs = DVector::<f64>::zeros(k);
    rhs[local[u]] = 1.0;
    let chol = lap
        .cholesky()
        .ok_or_else(|| Error::InvalidParameter("grounded Laplacian is not positive definite".into()))?;
    Ok(chol.solve(&rhs)[local[u]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceBoundReport {
    pub n: usize,
    pub edges_checked: usize,
    /// Largest `r_f k_f / n`; at most 1 when the bound holds.
    pub max_ratio: f64,
    pub violations: usize,
}

impl ResistanceBoundReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `r_f <= n / k_f` for every edge `f` of a graph on at most 64 vertices.
pub fn resistance_bound_check(g: &OrdinaryGraph) -> Result<ResistanceBoundReport> {
    if g.n() > 64 {
        return Err(Error::SizeGuard {
            what: "resistance/strength check",
            limit: 64,
            got: g.n(),
        });
    }
    let h = g.to_hypergraph();
    let strengths = edge_strengths(&h)?;
    let n = g.n() as f64;
    let mut report = ResistanceBoundReport {
        n: g.n(),
        edges_checked: 0,
        max_ratio: 0.0,
        violations: 0,
    };
    for e in h.edges() {
        let (u, v) = (e.vertices()[0], e.vertices()[1]);
        let r = effective_resistance(g, u, v)?;
        let k = strengths[&e.id()];
        let ratio = r * k / n;
        report.edges_checked += 1;
        report.max_ratio = report.max_ratio.max(ratio);
        if ratio > 1.0 + 1e-9 {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Resistances and clique strengths of every hyperedge.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceProfile {
    /// `r_e = max_{f in F_e} r_f`, aligned with the hyperedges.
    pub edge_resistance: Vec<f64>,
    /// `min_{f in F_e} k_f` in the clique expansion, aligned with the hyperedges.
    pub min_clique_strength: Vec<f64>,
}

pub fn resistance_profile(h: &Hypergraph) -> Result<ResistanceProfile> {
    let g = clique_expansion(h);
    let gh = g.to_hypergraph();
    let ks = edge_strengths(&gh)?;
    let pair_strength: BTreeMap<(usize, usize), f64> = gh
        .edges()
        .iter()
        .map(|e| ((e.vertices()[0], e.vertices()[1]), ks[&e.id()]))
        .collect();
    let mut resist: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut edge_resistance = Vec::with_capacity(h.m());
    let mut min_clique_strength = Vec::with_capacity(h.m());
    for e in h.edges() {
        let vs = e.vertices();
        let mut r_max: f64 = 0.0;
        let mut k_min = f64::INFINITY;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                let r = match resist.get(&(u, v)) {
                    Some(&r) => r,
                    None => {
                        let r = effective_resistance(&g, u, v)?;
                        resist.insert((u, v), r);
                        r
                    }
                };
                r_max = r_max.max(r);
                k_min = k_min.min(pair_strength[&(u, v)]);
            }
        }
        edge_resistance.push(r_max);
        min_clique_strength.push(k_min);
    }
    Ok(ResistanceProfile {
        edge_resistance,
        min_clique_strength,
    })
}
