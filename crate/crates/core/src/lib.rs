//! Computation in finite p-groups given by power-commutator presentations,
//! with a derivation-based search for non-inner automorphisms of order `p`
//! and an exhaustive automorphism oracle that checks the results.

pub mod error;
pub mod pcgroup;
pub mod structure;
pub mod derivation;
pub mod berkovich;
pub mod oracle;

pub use error::{Error, Result};
pub use pcgroup::{Group, GroupElement, PcPresentation, Word};

#[cfg(test)]
pub(crate) mod test_groups;
