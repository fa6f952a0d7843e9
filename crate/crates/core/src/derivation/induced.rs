//! Derivations on the group itself, read off preimage words.

use std::collections::VecDeque;

use rand::Rng;

use super::{check_relation_kernel, Derivation};
use crate::error::{Error, Result};
use crate::pcgroup::{Group, GroupElement, Word};

/// Number of random elements whose value is recomputed from a second preimage.
const PREIMAGE_SAMPLES: usize = 20;
/// Number of random coset checks `delta(f r) = delta(f)` with `r` in the relator closure.
const COSET_SAMPLES: usize = 20;

/// A derivation `G -> M` obtained by evaluating a free derivation on preimages.
#[derive(Debug, Clone)]
pub struct InducedDerivation<'g> {
    free: Derivation<'g>,
    words: Vec<Word>,
    values: Vec<GroupElement>,
}

impl<'g> InducedDerivation<'g> {
    pub fn group(&self) -> &'g Group {
        self.free.group()
    }

    pub fn free(&self) -> &Derivation<'g> {
        &self.free
    }

    pub fn eval(&self, g: GroupElement) -> GroupElement {
        self.values[g.index()]
    }

    /// The stored preimage word of `g` over the free generators.
    pub fn preimage(&self, g: GroupElement) -> &Word {
        &self.words[g.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_identity())
    }
}

/// Shortest words over the free generators mapping onto each element, by
/// breadth-first search of the Cayley graph with generators `gen_map`.
pub fn preimage_words(g: &Group, gen_map: &[GroupElement]) -> Result<Vec<Word>> {
    let mut words: Vec<Option<Word>> = vec![None; g.order()];
    words[0] = Some(Word::identity());
    let mut queue = VecDeque::from([GroupElement::IDENTITY]);
    while let Some(a) = queue.pop_front() {
        for (s, &x) in gen_map.iter().enumerate() {
            let b = g.mul(a, x);
            if words[b.index()].is_none() {
                let mut w = words[a.index()].clone().unwrap();
                w.push(s, 1);
                words[b.index()] = Some(w);
                queue.push_back(b);
            }
        }
    }
    words
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Derivation("projected generators do not generate the group".into()))
}

/// Induces `delta` on `G`, given that it vanishes on `relations`.
///
/// The values are read off breadth-first preimage words. Well-definedness is
/// spot-checked twice: random elements are re-evaluated through a second
/// preimage built from the pc normal form, and `delta(f r) = delta(f)` is
/// checked for random `f` and random products `r` of conjugated relators.
pub fn induce_on_quotient<'g>(
    delta: &Derivation<'g>,
    relations: &[Word],
    rng: &mut impl Rng,
) -> Result<InducedDerivation<'g>> {
    let kernel = check_relation_kernel(delta, relations)?;
    if !kernel.kernel_ok {
        return Err(Error::Derivation(format!(
            "derivation does not vanish on the relators: values {:?}",
            kernel.values
        )));
    }
    let g = delta.group();
    let words = preimage_words(g, delta.gen_map())?;
    let values = words.iter().map(|w| delta.eval(w)).collect::<Result<Vec<_>>>()?;

    let pc_words: Vec<&Word> = g.generators().iter().map(|a| &words[a.index()]).collect();
    for _ in 0..PREIMAGE_SAMPLES {
        let x = g.element(rng.gen_range(0..g.order()))?;
        let mut second = Word::identity();
        for (i, &e) in g.exponents(x).iter().enumerate() {
            second = second.mul(&pc_words[i].pow(e as i64));
        }
        if delta.eval(&second)? != values[x.index()] {
            return Err(Error::Derivation(format!(
                "two preimages of {} give different values",
                g.display(x)
            )));
        }
    }
    if !relations.is_empty() {
        let nfree = delta.nfree();
        for _ in 0..COSET_SAMPLES {
            let f = super::random_word(rng, nfree, 6, 3);
            let mut r = Word::identity();
            for _ in 0..3 {
                let rel = &relations[rng.gen_range(0..relations.len())];
                let conj = super::random_word(rng, nfree, 4, 3);
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                r = r.mul(&rel.pow(sign).conjugate(&conj));
            }
            if delta.eval(&f.mul(&r))? != delta.eval(&f)? {
                return Err(Error::Derivation(format!(
                    "derivation is not constant on the coset of {f} modulo the relators"
                )));
            }
        }
    }
    Ok(InducedDerivation {
        free: delta.clone(),
        words,
        values,
    })
}
