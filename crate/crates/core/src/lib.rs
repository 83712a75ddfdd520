//! Query-limited hypergraph sparsification.
//!
//! A hidden [`Hypergraph`] is reachable only through an [`OracleHandle`]
//! answering cut-value, cut-edge-sample and neighbor-sample queries. The
//! samplers in [`cutsparse`], [`pairsim`] and [`spectral`] build reweighted
//! sub-hypergraphs from those queries, and [`harness`] checks them against
//! the hidden graph.

pub mod cutsparse;
pub mod error;
pub mod harness;
pub mod hypercore;
pub mod instances;
pub mod oracle;
pub mod pairsim;
pub mod sfm;
pub mod spectral;

pub use error::{Error, Result};
pub use hypercore::{EdgeId, Hyperedge, Hypergraph, VertexSubset};
pub use oracle::{Capabilities, EdgeRecord, OracleHandle, QueryLedger};

/// Independent random streams derived from one seed.
pub(crate) mod streams {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub const ORACLE: u64 = 0;
    pub const SAMPLER: u64 = 1;
    pub const RESAMPLE: u64 = 2;
    pub const PAIRS: u64 = 3;
    pub const INSTANCES: u64 = 4;

    pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng
    }
}
