//! Exact max-flow / min-cut and the reductions built on it.

mod network;
mod reductions;

pub use network::{min_st_cut, Capacity, FlowArc, FlowNetwork, MinCut, WarmFlow};
pub use reductions::{
    hypergraph_flow, seeded_min_cut, strength_network, CutStructure, HypergraphFlow, SeededCut, StrengthNetwork,
    StrengthSolver,
};
