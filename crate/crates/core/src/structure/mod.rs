//! Subgroups, central series, thinness and the structural hypotheses of the
//! automorphism construction.

pub mod assumptions;
pub mod lattice;
pub mod ops;
pub mod series;
mod subgroup;
pub mod thin;

pub use assumptions::{analyze, standing_assumptions, AssumptionReport, Structure, StructureReport};
pub use lattice::{maximum_antichain, normal_subgroups, Antichain, DEFAULT_LATTICE_BOUND};
pub use ops::{
    abelian_invariants, center, centralizer, closure, commutator_subgroup, extend, frattini,
    min_generators, normal_closure, omega1, pc_generating_subset, quotient_rank,
};
pub use series::{lower_central_series, upper_central_series, CentralSeries, SeriesKind};
pub use subgroup::{Subgroup, SubgroupSummary};
pub use thin::{coverty_check, is_maximal_class, is_thin, MaximalClass, ThinMethod, ThinnessReport};
