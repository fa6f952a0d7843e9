//! Normal subgroup lattice and maximum antichains.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement};

use super::ops::normal_closure;
use super::Subgroup;

/// Default bound on `|G|` for normal-subgroup enumeration (`3^6`).
pub const DEFAULT_LATTICE_BOUND: usize = 729;

/// All normal subgroups of `g`, sorted by order and then by element list.
///
/// Every normal subgroup is the product of the normal closures of its
/// elements, so closing the set of principal normal subgroups under
/// products is exhaustive.
pub fn normal_subgroups(g: &Group, bound: usize) -> Result<Vec<Subgroup>> {
    if g.order() > bound {
        return Err(Error::OrderBound {
            order: g.order() as u64,
            bound: bound as u64,
        });
    }
    let mut seen: HashSet<Vec<GroupElement>> = HashSet::new();
    let mut principal: Vec<Subgroup> = Vec::new();
    let xs = g.generators();
    let mut classed = vec![false; g.order()];
    for x in g.elements() {
        if classed[x.index()] {
            continue;
        }
        // Conjugate elements have the same normal closure; mark the whole class.
        let mut stack = vec![x];
        classed[x.index()] = true;
        while let Some(y) = stack.pop() {
            for &t in &xs {
                let c = g.conj(y, t);
                if !classed[c.index()] {
                    classed[c.index()] = true;
                    stack.push(c);
                }
            }
        }
        let n = normal_closure(g, &[x]);
        if seen.insert(n.elements().to_vec()) {
            principal.push(n);
        }
    }

    let mut all: Vec<Subgroup> = principal.clone();
    let mut frontier: Vec<Subgroup> = principal.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &principal {
                if b.is_subgroup_of(a) {
                    continue;
                }
                let prod = product(g, a, b);
                if seen.insert(prod.elements().to_vec()) {
                    next.push(prod.clone());
                    all.push(prod);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(all)
}

/// Product `AB` of two normal subgroups.
fn product(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    super::ops::closure(g, &gens)
}

/// A maximum antichain of a finite poset given by its strict order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Antichain {
    pub members: Vec<usize>,
    pub chain_cover: usize,
}

/// Maximum antichain of `n` items under the strict partial order `less(i, j)`.
///
/// Uses Dilworth's theorem: the minimum chain cover has `n - m` chains where
/// `m` is a maximum matching of the comparability bipartite graph; the
/// antichain is read off a minimum vertex cover (Konig).
pub fn maximum_antichain(n: usize, less: impl Fn(usize, usize) -> bool) -> Antichain {
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| i != j && less(i, j)).collect())
        .collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut match_left: Vec<Option<usize>> = vec![None; n];

    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            if match_right[v].is_none()
                || augment(match_right[v].unwrap(), adj, visited, match_left, match_right)
            {
                match_right[v] = Some(u);
                match_left[u] = Some(v);
                return true;
            }
        }
        false
    }

    let mut matching = 0;
    for u in 0..n {
        let mut visited = vec![false; n];
        if augment(u, &adj, &mut visited, &mut match_left, &mut match_right) {
            matching += 1;
        }
    }

    // Alternating reachability from unmatched left vertices.
    let mut left_reached = vec![false; n];
    let mut right_reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&u| match_left[u].is_none()).collect();
    for &u in &stack {
        left_reached[u] = true;
    }
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !right_reached[v] {
                right_reached[v] = true;
                if let Some(w) = match_right[v] {
                    if !left_reached[w] {
                        left_reached[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
    }
    // Cover = (L \ reached) + (R & reached); the antichain avoids both copies.
    let members: Vec<usize> = (0..n)
        .filter(|&i| left_reached[i] && !right_reached[i])
        .collect();
    debug_assert_eq!(members.len(), n - matching);
    Antichain {
        members,
        chain_cover: n - matching,
    }
}

/// Maximum antichain of a list of subgroups ordered by inclusion.
pub fn subgroup_antichain(subgroups: &[Subgroup]) -> Antichain {
    maximum_antichain(subgroups.len(), |i, j| {
        subgroups[i].order() < subgroups[j].order() && subgroups[i].is_subgroup_of(&subgroups[j])
    })
}
