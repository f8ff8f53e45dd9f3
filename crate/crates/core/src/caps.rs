use serde::Serialize;

/// Resource limits for the exponential stages of the pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Hom-poset elements.
    pub max_elements: u64,
    /// Backtracking nodes, per enumeration or coloring search.
    pub max_nodes: u64,
    /// Chains (simplices) in an order complex.
    pub max_chains: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_elements: 200_000, max_nodes: 10_000_000, max_chains: 2_000_000 }
    }
}
