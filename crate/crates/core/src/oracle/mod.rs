//! Exhaustive automorphism enumeration and an independent certificate checker.

mod verify;

pub use verify::{verify_certificate, CheckOutcome, VerifyReport};

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::derivation::{preimage_words, respects_relations, Endo};
use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement};
use crate::structure::{center, frattini, lower_central_series, pc_generating_subset, Subgroup};

/// Default bound on `|G|` for exhaustive automorphism search (`3^6`).
pub const DEFAULT_ORACLE_BOUND: usize = 729;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutSearchResult {
    pub name: String,
    pub total: usize,
    pub inner: usize,
    pub noninner_order_p: usize,
    /// Generator images of the first non-inner automorphism of order `p`.
    pub representative: Option<Vec<Vec<u32>>>,
}

/// Lower central depth: the largest `i` with `x` in `gamma_i`.
fn depths(g: &Group) -> Result<Vec<usize>> {
    let lower = lower_central_series(g)?;
    let mut depth = vec![0usize; g.order()];
    for (i, term) in lower.terms.iter().enumerate() {
        for &x in term.elements() {
            depth[x.index()] = i + 1;
        }
    }
    Ok(depth)
}

/// Every automorphism of `g`, sorted by generator images.
///
/// Images are chosen for a generating subset of the pc generators, among
/// elements of the same order and the same lower central depth; images of
/// the remaining pc generators follow from fixed words. A tuple is kept when
/// the defining relations hold and the images span `G/Phi(G)`.
pub fn all_automorphisms(g: &Group, bound: usize) -> Result<Vec<Endo>> {
    if g.order() > bound {
        return Err(Error::OrderBound {
            order: g.order() as u64,
            bound: bound as u64,
        });
    }
    let basis = pc_generating_subset(g);
    let basis_elements: Vec<GroupElement> = basis.iter().map(|&i| g.generator(i)).collect();
    let words = preimage_words(g, &basis_elements)?;
    let pc_words: Vec<Vec<(usize, i64)>> = g
        .generators()
        .iter()
        .map(|a| words[a.index()].factors().to_vec())
        .collect();
    let depth = depths(g)?;
    let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let candidates: Vec<Vec<GroupElement>> = basis_elements
        .iter()
        .map(|&b| {
            g.elements()
                .filter(|y| orders[y.index()] == orders[b.index()] && depth[y.index()] == depth[b.index()])
                .collect()
        })
        .collect();

    let phi = frattini(g);
    let quotient_order = g.order() / phi.order();
    let d = basis.len();
    let total: usize = candidates.iter().map(Vec::len).product();
    let found: Vec<Vec<GroupElement>> = (0..total)
        .into_par_iter()
        .filter_map(|mut index| {
            let mut choice = Vec::with_capacity(d);
            for c in &candidates {
                choice.push(c[index % c.len()]);
                index /= c.len();
            }
            let images: Vec<GroupElement> = pc_words
                .iter()
                .map(|w| {
                    w.iter()
                        .fold(GroupElement::IDENTITY, |acc, &(k, e)| g.mul(acc, g.pow(choice[k], e)))
                })
                .collect();
            (respects_relations(g, &images) && spans_quotient(g, &phi, &choice, quotient_order)).then_some(images)
        })
        .collect();
    let mut autos: Vec<Endo> = found
        .into_iter()
        .map(|images| Endo::from_images(g, images))
        .collect::<Result<_>>()?;
    autos.sort_by(|a, b| a.images().cmp(b.images()));
    Ok(autos)
}

/// Whether `gens` generate `G` modulo `phi`, with `|G/phi| = quotient_order`.
fn spans_quotient(g: &Group, phi: &Subgroup, gens: &[GroupElement], quotient_order: usize) -> bool {
    let mut span: HashSet<GroupElement> = HashSet::from([GroupElement::IDENTITY]);
    let canon = |x: GroupElement| -> GroupElement {
        phi.elements().iter().map(|&f| g.mul(x, f)).min().unwrap()
    };
    for &y in gens {
        let y = canon(y);
        if span.contains(&y) {
            return false;
        }
        let mut next = HashSet::new();
        for &s in &span {
            let mut t = s;
            for _ in 0..g.prime() {
                next.insert(t);
                t = canon(g.mul(t, y));
            }
        }
        span = next;
    }
    span.len() == quotient_order
}

/// One conjugation map per coset of `Z(G)`, sorted by generator images.
pub fn inner_automorphisms(g: &Group) -> Vec<Endo> {
    let mut seen = HashSet::new();
    let mut out: Vec<Endo> = g
        .elements()
        .map(|h| Endo::conjugation(g, h))
        .filter(|e| seen.insert(e.images().to_vec()))
        .collect();
    out.sort_by(|a, b| a.images().cmp(b.images()));
    debug_assert_eq!(out.len(), g.order() / center(g).order());
    out
}

/// Least `k >= 1` with `phi^k = 1`.
pub fn endo_order(g: &Group, phi: &Endo) -> Result<usize> {
    if !phi.is_automorphism() {
        return Err(Error::Internal("order of a non-bijective endomorphism".into()));
    }
    let mut power = phi.clone();
    let mut k = 1;
    while !power.is_identity(g) {
        power = phi.compose(g, &power);
        k += 1;
        if k > g.order() * g.order() {
            return Err(Error::Internal("automorphism order does not terminate".into()));
        }
    }
    Ok(k)
}

/// Counts of all, inner and non-inner order-`p` automorphisms.
pub fn search(g: &Group, bound: usize) -> Result<AutSearchResult> {
    let autos = all_automorphisms(g, bound)?;
    let inner: HashSet<Vec<GroupElement>> = inner_automorphisms(g)
        .into_iter()
        .map(|e| e.images().to_vec())
        .collect();
    let p = g.prime() as usize;
    let mut noninner = 0;
    let mut representative = None;
    for phi in &autos {
        if inner.contains(phi.images()) {
            continue;
        }
        if endo_order(g, phi)? == p {
            noninner += 1;
            representative.get_or_insert_with(|| phi.exponent_images(g));
        }
    }
    Ok(AutSearchResult {
        name: g.name().to_string(),
        total: autos.len(),
        inner: inner.len(),
        noninner_order_p: noninner,
        representative,
    })
}

/// First non-inner automorphism of order `p` in sorted order, if any.
pub fn find_noninner_order_p(g: &Group, bound: usize) -> Result<Option<Endo>> {
    let autos = all_automorphisms(g, bound)?;
    let inner: HashSet<Vec<GroupElement>> = inner_automorphisms(g)
        .into_iter()
        .map(|e| e.images().to_vec())
        .collect();
    for phi in autos {
        if !inner.contains(phi.images()) && endo_order(g, &phi)? == g.prime() as usize {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Whether exhaustive enumeration contains `phi` and classifies it as a
/// non-inner automorphism of order `p`.
pub fn confirms(g: &Group, phi: &Endo, bound: usize) -> Result<bool> {
    let autos = all_automorphisms(g, bound)?;
    let Some(found) = autos.iter().find(|a| a.images() == phi.images()) else {
        return Ok(false);
    };
    let inner = inner_automorphisms(g).iter().any(|e| e.images() == found.images());
    Ok(!inner && endo_order(g, found)? == g.prime() as usize)
}

#[cfg(test)]
mod tests;
