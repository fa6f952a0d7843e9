use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement};

use super::ops::{commutator_subgroup, with_generators};
use super::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Lower,
    Upper,
}

/// Lower series runs `G = terms[0] > ... > 1`; upper runs `1 = terms[0] < ... < G`.
#[derive(Debug, Clone)]
pub struct CentralSeries {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
}

impl CentralSeries {
    pub fn class(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(Subgroup::order).collect()
    }

    /// `gamma_i` for the lower series (1-based, `gamma_1 = G`), trivial past the end.
    pub fn gamma(&self, i: usize) -> Subgroup {
        debug_assert_eq!(self.kind, SeriesKind::Lower);
        self.terms.get(i.max(1) - 1).cloned().unwrap_or_else(Subgroup::trivial)
    }

    /// `Z_i` for the upper series (`Z_0 = 1`), the whole group past the end.
    pub fn zeta(&self, i: usize) -> Subgroup {
        debug_assert_eq!(self.kind, SeriesKind::Upper);
        self.terms
            .get(i)
            .or_else(|| self.terms.last())
            .cloned()
            .expect("upper series is never empty")
    }
}

pub fn lower_central_series(g: &Group) -> Result<CentralSeries> {
    let whole = Subgroup::whole(g);
    let mut terms = vec![whole.clone()];
    while !terms.last().unwrap().is_trivial() {
        if terms.len() > g.ngens() + 1 {
            return Err(Error::Internal("lower central series does not terminate".into()));
        }
        let next = commutator_subgroup(g, terms.last().unwrap(), &whole);
        if next.order() == terms.last().unwrap().order() {
            return Err(Error::Internal("lower central series stabilised above 1".into()));
        }
        terms.push(next);
    }
    Ok(CentralSeries {
        kind: SeriesKind::Lower,
        terms,
    })
}

pub fn upper_central_series(g: &Group) -> Result<CentralSeries> {
    let xs = g.generators();
    let mut terms = vec![Subgroup::trivial()];
    while terms.last().unwrap().order() < g.order() {
        if terms.len() > g.ngens() + 1 {
            return Err(Error::Internal("upper central series does not terminate".into()));
        }
        let current = terms.last().unwrap();
        // [x, y] in Z_i for all generators y suffices since Z_i is normal.
        let elements: Vec<GroupElement> = g
            .elements()
            .filter(|&x| xs.iter().all(|&y| current.contains(g.comm(x, y))))
            .collect();
        if elements.len() == current.order() {
            return Err(Error::Internal("upper central series stabilised below G".into()));
        }
        terms.push(with_generators(g, elements));
    }
    Ok(CentralSeries {
        kind: SeriesKind::Upper,
        terms,
    })
}
