use super::{queyranne_min, SetFunction};
use crate::error::{Error, Result};
use crate::hypercore::VertexSubset;
use crate::oracle::OracleHandle;

/// `Delta_X(S) = 1/2 (w(d(S)) + w(d(X\S)) - w(d(X)))`, evaluated through
/// cut-value queries. `w(d(X))` is queried once at construction.
pub struct PseudoCutFunction<'a> {
    oracle: &'a mut OracleHandle,
    ground: VertexSubset,
    ground_cut: f64,
    count: u64,
}

impl<'a> PseudoCutFunction<'a> {
    pub fn new(oracle: &'a mut OracleHandle, ground: VertexSubset) -> Result<Self> {
        let ground_cut = oracle.o_value(&ground)?;
        Ok(PseudoCutFunction {
            oracle,
            ground,
            ground_cut,
            count: 0,
        })
    }

    pub fn ground(&self) -> &VertexSubset {
        &self.ground
    }

    pub fn ground_cut(&self) -> f64 {
        self.ground_cut
    }
}

impl SetFunction for PseudoCutFunction<'_> {
    fn evaluate(&mut self, s: &VertexSubset) -> Result<f64> {
        if !s.is_subset(&self.ground) {
            return Err(Error::NotSubset);
        }
        self.count += 1;
        let rest = self.ground.difference(s);
        let a = self.oracle.o_value(s)?;
        let b = self.oracle.o_value(&rest)?;
        Ok(0.5 * (a + b - self.ground_cut))
    }

    fn evaluations(&self) -> u64 {
        self.count
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PseudoMinCut {
    pub side: VertexSubset,
    pub value: f64,
    /// Cut-value queries spent, including the one for `w(d(X))`.
    pub value_queries: u64,
}

/// Pseudo min cut over `x`, found with [`queyranne_min`].
pub fn pseudo_min_cut(oracle: &mut OracleHandle, x: &VertexSubset) -> Result<PseudoMinCut> {
    if x.len() < 2 {
        return Err(Error::GroundTooSmall(x.len()));
    }
    let before = oracle.ledger().value;
    let mut f = PseudoCutFunction::new(oracle, x.clone())?;
    let (side, value) = queyranne_min(&mut f, x)?;
    let value_queries = oracle.ledger().value - before;
    Ok(PseudoMinCut {
        side,
        value,
        value_queries,
    })
}
