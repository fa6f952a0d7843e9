use serde::Serialize;

use crate::pcgroup::{Group, GroupElement};

/// A subgroup stored as its sorted element list together with generator witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Self {
            elements: vec![GroupElement::IDENTITY],
            generators: Vec::new(),
        }
    }

    /// The whole group, witnessed by the pc generators.
    pub fn whole(g: &Group) -> Self {
        Self {
            elements: g.elements().collect(),
            generators: g.generators(),
        }
    }

    /// Trusted constructor: `elements` must be a subgroup generated by `generators`.
    pub(crate) fn from_parts(mut elements: Vec<GroupElement>, generators: Vec<GroupElement>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { elements, generators }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|&g| other.contains(g))
    }

    /// Same element set, regardless of generators.
    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }

    pub fn is_abelian(&self, g: &Group) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Normal in `g`: closed under conjugation by the pc generators.
    pub fn is_normal(&self, g: &Group) -> bool {
        let xs = g.generators();
        self.generators
            .iter()
            .all(|&h| xs.iter().all(|&x| self.contains(g.conj(h, x))))
    }

    /// Exponent `e` with `|H| = p^e`.
    pub fn log_order(&self, p: u32) -> u32 {
        let mut n = self.order();
        let mut e = 0;
        while n > 1 {
            n /= p as usize;
            e += 1;
        }
        e
    }

    pub fn summary(&self, g: &Group) -> SubgroupSummary {
        SubgroupSummary {
            order: self.order(),
            generators: self.generators.iter().map(|&x| g.exponents(x)).collect(),
        }
    }
}

/// Serializable view of a subgroup: its order and generator exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub generators: Vec<Vec<u32>>,
}
