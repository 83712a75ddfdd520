use serde::{Deserialize, Serialize};

/// Per-type query counts. Each answered oracle call bumps exactly one field.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryLedger {
    pub value: u64,
    pub edge: u64,
    pub nbr1: u64,
    pub nbr2: u64,
}

impl QueryLedger {
    pub fn total(&self) -> u64 {
        self.value + self.edge + self.nbr1 + self.nbr2
    }

    /// Counts accrued since `earlier`.
    pub fn since(&self, earlier: &QueryLedger) -> QueryLedger {
        QueryLedger {
            value: self.value - earlier.value,
            edge: self.edge - earlier.edge,
            nbr1: self.nbr1 - earlier.nbr1,
            nbr2: self.nbr2 - earlier.nbr2,
        }
    }
}

/// Which of the four query types a handle answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    pub value: bool,
    pub edge: bool,
    pub nbr1: bool,
    pub nbr2: bool,
}

impl Capabilities {
    pub const ALL: Capabilities = Capabilities {
        value: true,
        edge: true,
        nbr1: true,
        nbr2: true,
    };
    /// Cut values plus cut-edge samples.
    pub const VALUE_EDGE: Capabilities = Capabilities {
        value: true,
        edge: true,
        nbr1: false,
        nbr2: false,
    };
    /// Cut values plus pair-neighbor samples.
    pub const VALUE_NBR2: Capabilities = Capabilities {
        value: true,
        edge: false,
        nbr1: false,
        nbr2: true,
    };
    pub const VALUE_NBR1: Capabilities = Capabilities {
        value: true,
        edge: false,
        nbr1: true,
        nbr2: false,
    };
}

impl Default for Capabilities {
    fn default() -> Self {
        Capabilities::ALL
    }
}
