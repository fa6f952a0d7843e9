//! Closures, commutator subgroups, centralizers and related subgroup constructions.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement};

use super::Subgroup;

/// Smallest subgroup containing `gens`.
///
/// Redundant generators are dropped from the witness list, so the result
/// carries an irredundant generating sequence.
pub fn closure(g: &Group, gens: &[GroupElement]) -> Subgroup {
    extend(g, &Subgroup::trivial(), gens)
}

/// `<base, extra>`.
pub fn extend(g: &Group, base: &Subgroup, extra: &[GroupElement]) -> Subgroup {
    let mut member = vec![false; g.order()];
    let mut elements: Vec<GroupElement> = base.elements().to_vec();
    for &x in &elements {
        member[x.index()] = true;
    }
    let mut gens: Vec<GroupElement> = base.generators().to_vec();
    for &s in extra {
        if member[s.index()] {
            continue;
        }
        gens.push(s);
        // Saturate: right multiplication by generators from every known element.
        let mut queue: VecDeque<GroupElement> = elements.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &t in &gens {
                let y = g.mul(x, t);
                if !member[y.index()] {
                    member[y.index()] = true;
                    elements.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    Subgroup::from_parts(elements, gens)
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &Group, gens: &[GroupElement]) -> Subgroup {
    normal_extend(g, &Subgroup::trivial(), gens)
}

/// Normal closure of `<base, extra>`, where `base` is already normal.
pub fn normal_extend(g: &Group, base: &Subgroup, extra: &[GroupElement]) -> Subgroup {
    let xs = g.generators();
    let mut h = extend(g, base, extra);
    let mut pending: VecDeque<GroupElement> = h.generators().iter().copied().collect();
    while let Some(s) = pending.pop_front() {
        for &x in &xs {
            let c = g.conj(s, x);
            if !h.contains(c) {
                h = extend(g, &h, &[c]);
                pending.push_back(c);
            }
        }
    }
    h
}

/// `[A, B]`, the subgroup generated by all commutators `[a, b]`.
///
/// When both arguments are normal the generator witnesses suffice:
/// `[A, B]` is then the normal closure of the generator commutators.
pub fn commutator_subgroup(g: &Group, a: &Subgroup, b: &Subgroup) -> Subgroup {
    if a.is_normal(g) && b.is_normal(g) {
        let comms: Vec<GroupElement> = a
            .generators()
            .iter()
            .flat_map(|&x| b.generators().iter().map(move |&y| (x, y)))
            .map(|(x, y)| g.comm(x, y))
            .collect();
        return normal_closure(g, &comms);
    }
    let mut seen = vec![false; g.order()];
    let mut comms = Vec::new();
    for &x in a.elements() {
        for &y in b.elements() {
            let c = g.comm(x, y);
            if !seen[c.index()] {
                seen[c.index()] = true;
                comms.push(c);
            }
        }
    }
    closure(g, &comms)
}

/// `C_G(S)`: elements commuting with every generator of `s`.
pub fn centralizer(g: &Group, s: &Subgroup) -> Subgroup {
    let gens = s.generators();
    let elements: Vec<GroupElement> = g
        .elements()
        .filter(|&x| gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect();
    with_generators(g, elements)
}

pub fn center(g: &Group) -> Subgroup {
    centralizer(g, &Subgroup::whole(g))
}

/// Wraps a known subgroup element set, recovering an irredundant generating set.
pub(crate) fn with_generators(g: &Group, elements: Vec<GroupElement>) -> Subgroup {
    let target = elements.len();
    let mut h = Subgroup::trivial();
    // Larger-weight elements first would also work; index order is deterministic.
    for &x in &elements {
        if h.order() == target {
            break;
        }
        if !h.contains(x) {
            h = extend(g, &h, &[x]);
        }
    }
    debug_assert_eq!(h.order(), target, "element set is not a subgroup");
    h
}

/// `Phi(G) = G^p [G, G]`.
pub fn frattini(g: &Group) -> Subgroup {
    let whole = Subgroup::whole(g);
    let derived = commutator_subgroup(g, &whole, &whole);
    let p = g.prime() as i64;
    let powers: Vec<GroupElement> = g.generators().iter().map(|&x| g.pow(x, p)).collect();
    // G' contains all commutators, so adding p-th powers of generators gives G^p G'.
    extend(g, &derived, &powers)
}

/// `Omega_1(A)`: elements of the abelian subgroup `a` with `x^p = 1`.
pub fn omega1(g: &Group, a: &Subgroup) -> Result<Subgroup> {
    if !a.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    let p = g.prime() as i64;
    let elements = a
        .elements()
        .iter()
        .copied()
        .filter(|&x| g.pow(x, p).is_identity())
        .collect();
    Ok(with_generators(g, elements))
}

/// Minimal number of generators of `A/B` for normal `B <= A` with `A/B` a p-group:
/// `log_p |A / (A^p [A, A] B)|`.
pub fn quotient_rank(g: &Group, a: &Subgroup, b: &Subgroup) -> u32 {
    let p = g.prime() as i64;
    let mut extra: Vec<GroupElement> = a.generators().iter().map(|&x| g.pow(x, p)).collect();
    for &x in a.generators() {
        for &y in a.generators() {
            extra.push(g.comm(x, y));
        }
    }
    let frattini_b = extend(g, b, &extra);
    // A^p[A,A]B is normal in A; |A : Phi(A)B| = p^d.
    let normal_in_a = normal_closure_in(g, a, &frattini_b);
    a.log_order(g.prime()) - normal_in_a.log_order(g.prime())
}

/// Closure of `h` under conjugation by the generators of `a`.
fn normal_closure_in(g: &Group, a: &Subgroup, h: &Subgroup) -> Subgroup {
    let mut h = h.clone();
    let mut pending: VecDeque<GroupElement> = h.generators().iter().copied().collect();
    while let Some(s) = pending.pop_front() {
        for &x in a.generators() {
            let c = g.conj(s, x);
            if !h.contains(c) {
                h = extend(g, &h, &[c]);
                pending.push_back(c);
            }
        }
    }
    h
}

/// `d(G) = log_p |G / Phi(G)|`.
pub fn min_generators(g: &Group) -> u32 {
    let phi = frattini(g);
    g.ngens() as u32 - phi.log_order(g.prime())
}

/// Abelian invariants of an abelian subgroup as prime-power exponents in
/// decreasing order: `[2, 1]` means `C_{p^2} x C_p`.
pub fn abelian_invariants(g: &Group, a: &Subgroup) -> Result<Vec<u32>> {
    if !a.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    let p = g.prime() as u64;
    // |Omega_k(A)| = p^{r_k}; the number of cyclic factors of exponent >= k is r_k - r_{k-1}.
    let mut ranks = vec![0u32];
    let mut k = 1u32;
    loop {
        let pk = p.pow(k) as i64;
        let count = a.elements().iter().filter(|&&x| g.pow(x, pk).is_identity()).count();
        let mut r = 0;
        let mut c = count;
        while c > 1 {
            c /= p as usize;
            r += 1;
        }
        ranks.push(r);
        if count == a.order() {
            break;
        }
        k += 1;
    }
    let mut invariants = Vec::new();
    for k in (1..ranks.len()).rev() {
        let at_least_k = ranks[k] - ranks[k - 1];
        let at_least_next = if k + 1 < ranks.len() { ranks[k + 1] - ranks[k] } else { 0 };
        for _ in 0..(at_least_k - at_least_next) {
            invariants.push(k as u32);
        }
    }
    Ok(invariants)
}

/// Indices of pc generators forming a minimal generating set: `a_i` is kept
/// when it lies outside `Phi(G)` extended by the generators already kept.
pub fn pc_generating_subset(g: &Group) -> Vec<usize> {
    let mut span = frattini(g);
    let mut kept = Vec::new();
    for i in 0..g.ngens() {
        let a = g.generator(i);
        if !span.contains(a) {
            span = extend(g, &span, &[a]);
            kept.push(i);
        }
    }
    kept
}
