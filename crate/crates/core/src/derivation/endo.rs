//! Endomorphisms given by images of the pc generators.

use serde::Serialize;

use super::InducedDerivation;
use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement, Word};
use crate::structure::closure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndoKind {
    Endomorphism,
    Automorphism,
}

/// A homomorphism `G -> G` fixed by the images of the pc generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Endo {
    images: Vec<GroupElement>,
    kind: EndoKind,
}

/// Whether `a_i -> images[i]` respects every power and commutator relation.
pub fn respects_relations(g: &Group, images: &[GroupElement]) -> bool {
    let pres = g.presentation();
    let p = g.prime() as i64;
    let eval = |w: &Word| eval_word(g, images, w);
    (0..g.ngens()).all(|i| g.pow(images[i], p) == eval(&pres.power(i)))
        && (0..g.ngens()).all(|i| {
            (i + 1..g.ngens()).all(|j| g.comm(images[j], images[i]) == eval(&pres.commutator(j, i)))
        })
}

fn eval_word(g: &Group, images: &[GroupElement], w: &Word) -> GroupElement {
    w.factors()
        .iter()
        .fold(GroupElement::IDENTITY, |acc, &(k, e)| g.mul(acc, g.pow(images[k], e)))
}

impl Endo {
    pub fn identity(g: &Group) -> Self {
        Self {
            images: g.generators(),
            kind: EndoKind::Automorphism,
        }
    }

    /// Checks the relations and classifies the map.
    pub fn from_images(g: &Group, images: Vec<GroupElement>) -> Result<Self> {
        if images.len() != g.ngens() {
            return Err(Error::Internal(format!(
                "{} images for {} generators",
                images.len(),
                g.ngens()
            )));
        }
        for &x in &images {
            g.check(x)?;
        }
        if !respects_relations(g, &images) {
            return Err(Error::Internal("images do not satisfy the defining relations".into()));
        }
        let kind = if closure(g, &images).order() == g.order() {
            EndoKind::Automorphism
        } else {
            EndoKind::Endomorphism
        };
        Ok(Self { images, kind })
    }

    /// Conjugation `x -> h^-1 x h`.
    pub fn conjugation(g: &Group, h: GroupElement) -> Self {
        Self {
            images: g.generators().into_iter().map(|a| g.conj(a, h)).collect(),
            kind: EndoKind::Automorphism,
        }
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn kind(&self) -> EndoKind {
        self.kind
    }

    pub fn is_automorphism(&self) -> bool {
        self.kind == EndoKind::Automorphism
    }

    pub fn is_identity(&self, g: &Group) -> bool {
        self.images == g.generators()
    }

    /// Image of an arbitrary element via its normal form.
    pub fn apply(&self, g: &Group, x: GroupElement) -> GroupElement {
        g.exponents(x)
            .iter()
            .zip(&self.images)
            .fold(GroupElement::IDENTITY, |acc, (&e, &y)| g.mul(acc, g.pow(y, e as i64)))
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, g: &Group, other: &Endo) -> Endo {
        let kind = if self.is_automorphism() && other.is_automorphism() {
            EndoKind::Automorphism
        } else {
            EndoKind::Endomorphism
        };
        Endo {
            images: other.images.iter().map(|&y| self.apply(g, y)).collect(),
            kind,
        }
    }

    pub fn pow(&self, g: &Group, k: u32) -> Endo {
        (0..k).fold(Endo::identity(g), |acc, _| self.compose(g, &acc))
    }

    pub fn exponent_images(&self, g: &Group) -> Vec<Vec<u32>> {
        self.images.iter().map(|&y| g.exponents(y)).collect()
    }
}

/// `g -> g delta(g)`; an automorphism when `delta` vanishes on its module.
pub fn lift_to_automorphism(delta: &InducedDerivation<'_>) -> Result<Endo> {
    let g = delta.group();
    let images: Vec<GroupElement> = g.generators().into_iter().map(|a| g.mul(a, delta.eval(a))).collect();
    if !respects_relations(g, &images) {
        return Err(Error::Internal("lift of a derivation is not a homomorphism".into()));
    }
    let kills_module = delta
        .free()
        .module()
        .carrier()
        .elements()
        .iter()
        .all(|&m| delta.eval(m).is_identity());
    if !kills_module {
        return Ok(Endo {
            images,
            kind: EndoKind::Endomorphism,
        });
    }
    if closure(g, &images).order() != g.order() {
        return Err(Error::Internal("lift of a derivation vanishing on its module is not onto".into()));
    }
    Ok(Endo {
        images,
        kind: EndoKind::Automorphism,
    })
}
