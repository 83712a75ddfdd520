//! Metered query access to a hidden hypergraph.
//!
//! An [`OracleHandle`] owns the hidden graph and exposes only its vertex
//! count and the four queries. The hidden edges are not reachable through
//! the public surface:
//!
//! ```compile_fail
//! use hypersparse::{Hypergraph, OracleHandle};
//! let h = Hypergraph::unweighted(2, [[0, 1]]).unwrap();
//! let oracle = OracleHandle::new(h, 7);
//! let leaked = oracle.hidden.edges();
//! ```

mod ledger;
pub mod transcript;

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypercore::{EdgeId, Hyperedge, Hypergraph, VertexSubset};
pub use ledger::{Capabilities, QueryLedger};
use transcript::{Answer, Query, TranscriptEntry};

/// What a sampling query reveals about the edge it drew.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub vertices: Vec<usize>,
    pub weight: f64,
}

impl EdgeRecord {
    fn of(e: &Hyperedge) -> Self {
        EdgeRecord {
            id: e.id(),
            vertices: e.vertices().to_vec(),
            weight: e.weight(),
        }
    }

    pub fn members(&self, n: usize) -> VertexSubset {
        VertexSubset::from_vertices(n, self.vertices.iter().copied())
    }
}

/// Edge indices with their running weight totals, for inverse-CDF draws.
#[derive(Debug, Clone)]
struct WeightedPool {
    edges: Vec<usize>,
    cumulative: Vec<f64>,
}

impl WeightedPool {
    fn new(h: &Hypergraph, edges: Vec<usize>) -> Self {
        let mut acc = 0.0;
        let cumulative = edges
            .iter()
            .map(|&i| {
                acc += h.edges()[i].weight();
                acc
            })
            .collect();
        WeightedPool { edges, cumulative }
    }

    fn total(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Option<usize> {
        if self.edges.is_empty() {
            return None;
        }
        let x = rng.random::<f64>() * self.total();
        let pos = self.cumulative.partition_point(|&c| c <= x);
        Some(self.edges[pos.min(self.edges.len() - 1)])
    }
}

pub struct OracleHandle {
    hidden: Hypergraph,
    capabilities: Capabilities,
    ledger: QueryLedger,
    rng: ChaCha8Rng,
    transcript: Option<Vec<TranscriptEntry>>,
    incidence: Vec<Vec<usize>>,
    last_cut: Option<(VertexSubset, WeightedPool)>,
    vertex_pools: HashMap<usize, WeightedPool>,
    pair_pools: HashMap<(usize, usize), WeightedPool>,
}

impl OracleHandle {
    pub fn new(hidden: Hypergraph, seed: u64) -> Self {
        Self::with_capabilities(hidden, seed, Capabilities::ALL)
    }

    pub fn with_capabilities(hidden: Hypergraph, seed: u64, capabilities: Capabilities) -> Self {
        let mut incidence = vec![Vec::new(); hidden.n()];
        for (i, e) in hidden.edges().iter().enumerate() {
            for &v in e.vertices() {
                incidence[v].push(i);
            }
        }
        OracleHandle {
            hidden,
            capabilities,
            ledger: QueryLedger::default(),
            rng: crate::streams::rng(seed, crate::streams::ORACLE),
            transcript: None,
            incidence,
            last_cut: None,
            vertex_pools: HashMap::new(),
            pair_pools: HashMap::new(),
        }
    }

    /// Starts recording every subsequent query and answer.
    pub fn record_transcript(mut self) -> Self {
        self.transcript = Some(Vec::new());
        self
    }

    pub fn n(&self) -> usize {
        self.hidden.n()
    }

    pub fn ledger(&self) -> QueryLedger {
        self.ledger
    }

    pub fn capabilities(&self) -> Capabilities {
        self.capabilities
    }

    pub fn transcript(&self) -> Option<&[TranscriptEntry]> {
        self.transcript.as_deref()
    }

    fn log(&mut self, query: Query, answer: Answer) {
        if let Some(t) = self.transcript.as_mut() {
            t.push(TranscriptEntry { query, answer });
        }
    }

    fn check_set(&self, s: &VertexSubset) -> Result<()> {
        if s.universe() != self.n() {
            return Err(Error::VertexCountMismatch(s.universe(), self.n()));
        }
        Ok(())
    }

    /// Total weight of edges crossing `(S, V \ S)`.
    pub fn o_value(&mut self, s: &VertexSubset) -> Result<f64> {
        if !self.capabilities.value {
            return Err(Error::CapabilityViolation("value"));
        }
        self.check_set(s)?;
        self.ledger.value += 1;
        let v = self.hidden.cut_weight(s);
        self.log(Query::Value(s.to_vec()), Answer::Value(v));
        Ok(v)
    }

    /// An edge crossing `(S, V \ S)`, drawn with probability proportional to
    /// its weight.
    pub fn o_edge(&mut self, s: &VertexSubset) -> Result<EdgeRecord> {
        if !self.capabilities.edge {
            return Err(Error::CapabilityViolation("edge"));
        }
        self.check_set(s)?;
        self.ledger.edge += 1;
        let cached = matches!(&self.last_cut, Some((c, _)) if c == s);
        if !cached {
            let crossing: Vec<usize> = (0..self.hidden.m())
                .filter(|&i| self.hidden.edges()[i].crosses(s))
                .collect();
            self.last_cut = Some((s.clone(), WeightedPool::new(&self.hidden, crossing)));
        }
        let (_, pool) = self.last_cut.as_ref().expect("just filled");
        match pool.draw(&mut self.rng) {
            Some(i) => {
                let rec = EdgeRecord::of(&self.hidden.edges()[i]);
                self.log(Query::Edge(s.to_vec()), Answer::Edge(rec.id));
                Ok(rec)
            }
            None => {
                self.log(Query::Edge(s.to_vec()), Answer::Err);
                Err(Error::EmptyCut)
            }
        }
    }

    /// A weight-proportional random edge containing `v`, or `None`.
    pub fn o_nbr1(&mut self, v: usize) -> Result<Option<EdgeRecord>> {
        if !self.capabilities.nbr1 {
            return Err(Error::CapabilityViolation("nbr1"));
        }
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        self.ledger.nbr1 += 1;
        let pool = self
            .vertex_pools
            .entry(v)
            .or_insert_with(|| WeightedPool::new(&self.hidden, self.incidence[v].clone()));
        let rec = pool
            .draw(&mut self.rng)
            .map(|i| EdgeRecord::of(&self.hidden.edges()[i]));
        let ans = rec.as_ref().map_or(Answer::Nil, |r| Answer::Edge(r.id));
        self.log(Query::Nbr1(v), ans);
        Ok(rec)
    }

    /// A weight-proportional random edge containing both `u` and `v`, or `None`.
    pub fn o_nbr2(&mut self, u: usize, v: usize) -> Result<Option<EdgeRecord>> {
        if !self.capabilities.nbr2 {
            return Err(Error::CapabilityViolation("nbr2"));
        }
        if u == v {
            return Err(Error::SamePair(u));
        }
        let n = self.n();
        if let Some(&bad) = [u, v].iter().find(|&&x| x >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n });
        }
        self.ledger.nbr2 += 1;
        let key = (u.min(v), u.max(v));
        let pool = self.pair_pools.entry(key).or_insert_with(|| {
            let both: Vec<usize> = self.incidence[key.0]
                .iter()
                .copied()
                .filter(|&i| self.hidden.edges()[i].members().contains(key.1))
                .collect();
            WeightedPool::new(&self.hidden, both)
        });
        let rec = pool
            .draw(&mut self.rng)
            .map(|i| EdgeRecord::of(&self.hidden.edges()[i]));
        let ans = rec.as_ref().map_or(Answer::Nil, |r| Answer::Edge(r.id));
        self.log(Query::Nbr2(u, v), ans);
        Ok(rec)
    }

    /// Re-issues every query of `entries` against this handle and checks the
    /// answers match. Use a fresh handle with the recording seed.
    pub fn replay(&mut self, entries: &[TranscriptEntry]) -> Result<()> {
        let n = self.n();
        for (index, entry) in entries.iter().enumerate() {
            let got = match &entry.query {
                Query::Value(s) => Answer::Value(self.o_value(&VertexSubset::from_vertices(n, s.iter().copied()))?),
                Query::Edge(s) => match self.o_edge(&VertexSubset::from_vertices(n, s.iter().copied())) {
                    Ok(r) => Answer::Edge(r.id),
                    Err(Error::EmptyCut) => Answer::Err,
                    Err(e) => return Err(e),
                },
                Query::Nbr1(v) => self.o_nbr1(*v)?.map_or(Answer::Nil, |r| Answer::Edge(r.id)),
                Query::Nbr2(u, v) => self.o_nbr2(*u, *v)?.map_or(Answer::Nil, |r| Answer::Edge(r.id)),
            };
            if got != entry.answer {
                let got = TranscriptEntry {
                    query: entry.query.clone(),
                    answer: got,
                };
                return Err(Error::TranscriptMismatch {
                    index,
                    expected: entry.to_string(),
                    got: got.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for OracleHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OracleHandle")
            .field("n", &self.n())
            .field("capabilities", &self.capabilities)
            .field("ledger", &self.ledger)
            .finish_non_exhaustive()
    }
}
