//! Ground-truth hypergraph model.

mod graph;
pub mod io;
mod strength;
mod subset;

pub use graph::{EdgeId, Hyperedge, Hypergraph, Induced};
pub use io::{read_hypergraph, write_hypergraph};
pub(crate) use strength::WordCuts;
pub use strength::{
    edge_strengths, min_cut, min_cut_with, pseudo_strength_bruteforce, pseudo_strengths_bruteforce, strength_sum,
    MinCut, MinCutBackend, EXHAUSTIVE_LIMIT, PSEUDO_BRUTE_LIMIT,
};
pub use subset::VertexSubset;
