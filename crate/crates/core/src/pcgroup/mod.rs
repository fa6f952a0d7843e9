//! Finite p-groups from refined power-commutator presentations.

mod collect;
mod group;
mod presentation;

pub use collect::{check_consistency, Collector, ConsistencyReport, OverlapFailure, COLLECT_BUDGET};
pub use group::{Group, GroupElement, DEFAULT_MEMO_BOUND, DEFAULT_ORDER_BOUND};
pub use presentation::{PcPresentation, Word};

#[cfg(test)]
mod tests;
