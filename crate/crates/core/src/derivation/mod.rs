//! Derivations `delta(gh) = delta(g)^h delta(h)` into a normal abelian
//! subgroup, evaluated on free words and induced on the group.

mod endo;
mod identities;
mod induced;

pub use endo::{lift_to_automorphism, respects_relations, Endo, EndoKind};
pub use identities::{random_word, verify_free_derivation_identities, ClauseResult, PropertyReport};
pub use induced::{induce_on_quotient, preimage_words, InducedDerivation};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement, Word};
use crate::structure::Subgroup;

/// A normal abelian subgroup acted on by conjugation.
#[derive(Debug, Clone)]
pub struct GroupModule<'g> {
    group: &'g Group,
    carrier: Subgroup,
}

impl<'g> GroupModule<'g> {
    pub fn new(group: &'g Group, carrier: Subgroup) -> Result<Self> {
        if !carrier.is_abelian(group) {
            return Err(Error::NotAbelian);
        }
        if !carrier.is_normal(group) {
            return Err(Error::NotNormal);
        }
        Ok(Self { group, carrier })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn carrier(&self) -> &Subgroup {
        &self.carrier
    }

    /// `m^g`.
    pub fn act(&self, m: GroupElement, g: GroupElement) -> GroupElement {
        self.group.conj(m, g)
    }
}

/// A derivation on the free group over `gen_images.len()` symbols.
///
/// Free words reuse [`Word`] with indices naming free generators, so `x` is
/// generator 0 and `y` is generator 1. `gen_map` is the projection onto the
/// group through which the free group acts on the module.
#[derive(Debug, Clone)]
pub struct Derivation<'g> {
    module: GroupModule<'g>,
    gen_images: Vec<GroupElement>,
    gen_map: Vec<GroupElement>,
}

/// The unique derivation with `delta(x_k) = images[k]`.
pub fn extend_from_generators<'g>(
    module: GroupModule<'g>,
    images: Vec<GroupElement>,
    gen_map: Vec<GroupElement>,
) -> Result<Derivation<'g>> {
    if images.len() != gen_map.len() {
        return Err(Error::Derivation(format!(
            "{} generator images for {} projected generators",
            images.len(),
            gen_map.len()
        )));
    }
    let g = module.group();
    for (k, (&m, &x)) in images.iter().zip(&gen_map).enumerate() {
        g.check(m)?;
        g.check(x)?;
        if !module.carrier().contains(m) {
            return Err(Error::Derivation(format!(
                "image of free generator {} is {}, outside the module",
                k + 1,
                g.display(m)
            )));
        }
    }
    Ok(Derivation {
        module,
        gen_images: images,
        gen_map,
    })
}

impl<'g> Derivation<'g> {
    pub fn module(&self) -> &GroupModule<'g> {
        &self.module
    }

    pub fn group(&self) -> &'g Group {
        self.module.group()
    }

    pub fn gen_images(&self) -> &[GroupElement] {
        &self.gen_images
    }

    pub fn gen_map(&self) -> &[GroupElement] {
        &self.gen_map
    }

    pub fn nfree(&self) -> usize {
        self.gen_map.len()
    }

    /// `pi(w)`.
    pub fn project(&self, w: &Word) -> Result<GroupElement> {
        let g = self.group();
        let mut acc = GroupElement::IDENTITY;
        for &(s, e) in w.factors() {
            let x = *self.gen_map.get(s).ok_or_else(|| self.unknown(s))?;
            acc = g.mul(acc, g.pow(x, e));
        }
        Ok(acc)
    }

    /// `delta(w)`, folded left to right with
    /// `delta(w x) = delta(w)^pi(x) delta(x)` and
    /// `delta(w x^-1) = delta(w)^pi(x)^-1 (delta(x)^-1)^pi(x)^-1`.
    pub fn eval(&self, w: &Word) -> Result<GroupElement> {
        Ok(self.eval_with_projection(w)?.0)
    }

    /// `(delta(w), pi(w))` in one pass.
    pub fn eval_with_projection(&self, w: &Word) -> Result<(GroupElement, GroupElement)> {
        let g = self.group();
        let mut d = GroupElement::IDENTITY;
        let mut pi = GroupElement::IDENTITY;
        for &(s, e) in w.factors() {
            let x = *self.gen_map.get(s).ok_or_else(|| self.unknown(s))?;
            let dx = self.gen_images[s];
            let (step, dstep) = if e > 0 {
                (x, dx)
            } else {
                let xi = g.inv(x);
                (xi, g.conj(g.inv(dx), xi))
            };
            for _ in 0..e.unsigned_abs() {
                d = g.mul(g.conj(d, step), dstep);
                pi = g.mul(pi, step);
            }
        }
        Ok((d, pi))
    }

    fn unknown(&self, s: usize) -> Error {
        Error::Derivation(format!(
            "free generator {} is not one of the {} symbols of this derivation",
            s + 1,
            self.nfree()
        ))
    }
}

/// Values of a derivation on a list of relators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub values: Vec<Vec<u32>>,
    pub kernel_ok: bool,
}

pub fn check_relation_kernel(delta: &Derivation<'_>, relations: &[Word]) -> Result<KernelReport> {
    let g = delta.group();
    let mut values = Vec::with_capacity(relations.len());
    let mut ok = true;
    for r in relations {
        let v = delta.eval(r)?;
        ok &= v.is_identity();
        values.push(g.exponents(v));
    }
    Ok(KernelReport { values, kernel_ok: ok })
}

/// `x^p, y^p, [y, x, x], [y, x, y]`: relators of the extraspecial group of
/// order `p^3` and exponent `p` on free generators `x = 0`, `y = 1`.
pub fn extraspecial_relators(p: u32) -> Vec<Word> {
    let x = Word::generator(0);
    let y = Word::generator(1);
    vec![
        x.pow(p as i64),
        y.pow(p as i64),
        Word::left_normed(&[y.clone(), x.clone(), x.clone()]),
        Word::left_normed(&[y.clone(), x, y]),
    ]
}

#[cfg(test)]
mod tests;
