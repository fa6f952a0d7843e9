//! Certificate verification using only group arithmetic, so that it shares
//! no code with the construction beyond multiplication in `G`.

use std::collections::HashSet;

use serde::Serialize;

use crate::berkovich::{GroupInfo, NonInnerCertificate};
use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub claimed: bool,
    pub recomputed: bool,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.claimed == self.recomputed && self.recomputed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub outcomes: Vec<CheckOutcome>,
    /// A conjugating element found by the scan, as an exponent vector.
    pub inner_witness: Option<Vec<u32>>,
    pub valid: bool,
}

fn eval(g: &Group, images: &[GroupElement], w: &Word) -> GroupElement {
    let mut acc = GroupElement::IDENTITY;
    for &(k, e) in w.factors() {
        acc = g.mul(acc, g.pow(images[k], e));
    }
    acc
}

fn apply(g: &Group, images: &[GroupElement], x: GroupElement) -> GroupElement {
    let mut acc = GroupElement::IDENTITY;
    for (i, &e) in g.exponents(x).iter().enumerate() {
        acc = g.mul(acc, g.pow(images[i], e as i64));
    }
    acc
}

fn generated(g: &Group, gens: &[GroupElement]) -> HashSet<GroupElement> {
    let mut seen = HashSet::from([GroupElement::IDENTITY]);
    let mut stack = vec![GroupElement::IDENTITY];
    while let Some(a) = stack.pop() {
        for &x in gens {
            let b = g.mul(a, x);
            if seen.insert(b) {
                stack.push(b);
            }
        }
    }
    seen
}

/// `G^p [G, G]` from all `p`-th powers and all commutators.
fn frattini_elements(g: &Group) -> HashSet<GroupElement> {
    let p = g.prime() as i64;
    let mut gens: HashSet<GroupElement> = g.elements().map(|x| g.pow(x, p)).collect();
    for x in g.elements() {
        for y in g.elements() {
            gens.insert(g.comm(x, y));
        }
    }
    gens.remove(&GroupElement::IDENTITY);
    let gens: Vec<GroupElement> = gens.into_iter().collect();
    generated(g, &gens)
}

/// Recomputes every check of `cert` against `g`. The certificate is valid
/// when every recomputed check passes and agrees with the claimed value.
pub fn verify_certificate(g: &Group, cert: &NonInnerCertificate) -> Result<VerifyReport> {
    let info = GroupInfo::of(g);
    if cert.group != info {
        return Err(Error::MalformedCertificate(format!(
            "certificate is for {} of order {}, not {} of order {}",
            cert.group.name, cert.group.order, info.name, info.order
        )));
    }
    if cert.images.len() != g.ngens() {
        return Err(Error::MalformedCertificate(format!(
            "{} images for {} generators",
            cert.images.len(),
            g.ngens()
        )));
    }
    let images: Vec<GroupElement> = cert
        .images
        .iter()
        .map(|e| g.from_exponents(e))
        .collect::<Result<_>>()
        .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    let gens = g.generators();
    let pres = g.presentation();
    let p = g.prime() as i64;

    let homomorphism = (0..g.ngens()).all(|i| g.pow(images[i], p) == eval(g, &images, &pres.power(i)))
        && (0..g.ngens()).all(|i| {
            (i + 1..g.ngens()).all(|j| g.comm(images[j], images[i]) == eval(g, &images, &pres.commutator(j, i)))
        });
    let bijective = generated(g, &images).len() == g.order();

    let mut iterate = gens.clone();
    let mut is_identity_map = true;
    for k in 1..=g.prime() {
        iterate = iterate.iter().map(|&x| apply(g, &images, x)).collect();
        if k == 1 {
            is_identity_map = iterate == gens;
        }
    }
    let order_p = homomorphism && !is_identity_map && iterate == gens;

    let fixes_frattini = homomorphism && frattini_elements(g).iter().all(|&h| apply(g, &images, h) == h);

    let witness = g
        .elements()
        .find(|&h| gens.iter().zip(&images).all(|(&a, &b)| g.conj(a, h) == b));

    let outcomes = vec![
        CheckOutcome {
            check: "order_p".into(),
            claimed: cert.checks.order_p,
            recomputed: order_p,
        },
        CheckOutcome {
            check: "fixes_frattini".into(),
            claimed: cert.checks.fixes_frattini,
            recomputed: fixes_frattini,
        },
        CheckOutcome {
            check: "homomorphism".into(),
            claimed: cert.checks.homomorphism,
            recomputed: homomorphism,
        },
        CheckOutcome {
            check: "bijective".into(),
            claimed: cert.checks.bijective,
            recomputed: bijective,
        },
        CheckOutcome {
            check: "non_inner".into(),
            claimed: cert.checks.inner_witness.is_none(),
            recomputed: witness.is_none(),
        },
    ];
    let valid = outcomes.iter().all(CheckOutcome::passed);
    Ok(VerifyReport {
        group: g.name().to_string(),
        outcomes,
        inner_witness: witness.map(|h| g.exponents(h)),
        valid,
    })
}
