//! Thinness: every antichain of normal subgroups has at most `p + 1` members.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement};

use super::lattice::{normal_subgroups, subgroup_antichain};
use super::ops::extend;
use super::series::{lower_central_series, CentralSeries};
use super::{Subgroup, SubgroupSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ThinMethod {
    Exact,
    Coverty,
}

impl std::str::FromStr for ThinMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ThinMethod::Exact),
            "coverty" => Ok(ThinMethod::Coverty),
            other => Err(Error::Syntax {
                line: 0,
                msg: format!("unknown thinness method {other:?}"),
            }),
        }
    }
}

/// Why a group failed the covering test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CovertyFailure {
    /// `gamma_i / gamma_{i+1}` is not elementary abelian of order at most `p^2`.
    Factor { term: usize, order: usize, elementary: bool },
    /// `[h, G] gamma_{i+2}` is a proper subgroup of `gamma_{i+1}`.
    Covering { term: usize, h: Vec<u32>, covered_order: usize, target_order: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThinWitness {
    Antichain { members: Vec<SubgroupSummary> },
    Coverty(CovertyFailure),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThinnessReport {
    pub is_thin: bool,
    pub method: ThinMethod,
    pub max_antichain_size: Option<usize>,
    pub normal_subgroup_count: Option<usize>,
    /// Maximum antichain when not thin (exact), or the failing condition (coverty).
    pub witness: Option<ThinWitness>,
}

pub fn is_thin(g: &Group, method: ThinMethod, lattice_bound: usize) -> Result<ThinnessReport> {
    match method {
        ThinMethod::Exact => exact(g, lattice_bound),
        ThinMethod::Coverty => {
            let lower = lower_central_series(g)?;
            let failure = coverty_check(g, &lower);
            Ok(ThinnessReport {
                is_thin: failure.is_none(),
                method,
                max_antichain_size: None,
                normal_subgroup_count: None,
                witness: failure.map(ThinWitness::Coverty),
            })
        }
    }
}

fn exact(g: &Group, bound: usize) -> Result<ThinnessReport> {
    let normals = normal_subgroups(g, bound)?;
    let anti = subgroup_antichain(&normals);
    let size = anti.members.len();
    let is_thin = size <= g.prime() as usize + 1;
    Ok(ThinnessReport {
        is_thin,
        method: ThinMethod::Exact,
        max_antichain_size: Some(size),
        normal_subgroup_count: Some(normals.len()),
        witness: (!is_thin).then(|| ThinWitness::Antichain {
            members: anti.members.iter().map(|&i| normals[i].summary(g)).collect(),
        }),
    })
}

/// Covering test on the lower central series.
///
/// Cyclic groups are thin outright. Otherwise every factor
/// `gamma_i / gamma_{i+1}` must be elementary abelian of order at most `p^2`
/// and every `h` in `gamma_i \ gamma_{i+1}` must satisfy
/// `[h, G] gamma_{i+2} = gamma_{i+1}`. Returns the first failure.
pub fn coverty_check(g: &Group, lower: &CentralSeries) -> Option<CovertyFailure> {
    let p = g.prime() as i64;
    if is_cyclic(g) {
        return None;
    }
    let c = lower.class();
    for i in 1..=c {
        let top = lower.gamma(i);
        let below = lower.gamma(i + 1);
        let index = top.order() / below.order();
        let elementary = top.generators().iter().all(|&x| below.contains(g.pow(x, p)))
            && top.generators().iter().all(|&x| {
                top.generators().iter().all(|&y| below.contains(g.comm(x, y)))
            });
        if !elementary || index > (p * p) as usize {
            return Some(CovertyFailure::Factor {
                term: i,
                order: index,
                elementary,
            });
        }
    }
    let xs = g.generators();
    for i in 1..c {
        let target = lower.gamma(i + 1);
        let floor = lower.gamma(i + 2);
        for &h in lower.gamma(i).elements() {
            if target.contains(h) {
                continue;
            }
            // [h, G] gamma_{i+2} is generated by [h, x] for pc generators x
            // modulo gamma_{i+2}, because [h, x] is central there.
            let comms: Vec<GroupElement> = xs.iter().map(|&x| g.comm(h, x)).collect();
            let covered = extend(g, &floor, &comms);
            if covered.order() != target.order() {
                return Some(CovertyFailure::Covering {
                    term: i,
                    h: g.exponents(h),
                    covered_order: covered.order(),
                    target_order: target.order(),
                });
            }
        }
    }
    None
}

/// Covering property for every `h` in `A \ B` against the pair `(B, C)`:
/// `[h, G] C = B`. Used for both lower and upper central series.
pub fn covers(g: &Group, a: &Subgroup, b: &Subgroup, c: &Subgroup) -> Option<GroupElement> {
    let xs = g.generators();
    a.elements().iter().copied().find(|&h| {
        if b.contains(h) {
            return false;
        }
        let comms: Vec<GroupElement> = xs.iter().map(|&x| g.comm(h, x)).collect();
        extend(g, c, &comms).order() != b.order()
    })
}

fn is_cyclic(g: &Group) -> bool {
    super::ops::min_generators(g) <= 1
}

/// Maximal-class verdict; groups of order at most `p^2` are flagged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MaximalClass {
    pub value: bool,
    pub order_boundary: bool,
}

pub fn is_maximal_class(g: &Group) -> Result<MaximalClass> {
    let n = g.ngens();
    if n <= 2 {
        return Ok(MaximalClass {
            value: true,
            order_boundary: true,
        });
    }
    let class = lower_central_series(g)?.class();
    Ok(MaximalClass {
        value: class == n - 1,
        order_boundary: false,
    })
}
