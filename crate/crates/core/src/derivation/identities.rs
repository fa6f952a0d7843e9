//! Randomised checks of the power and commutator identities satisfied by
//! derivations on a free group.

use rand::Rng;
use serde::Serialize;

use super::Derivation;
use crate::error::Result;
use crate::pcgroup::{GroupElement, Word};
use crate::structure::{commutator_subgroup, lower_central_series, normal_closure, upper_central_series, frattini, Subgroup};

/// Outcome of one identity over random samples. Clauses whose hypotheses
/// fail are reported as not applicable and count as passing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub clause: String,
    pub applicable: bool,
    pub trials: usize,
    pub failures: usize,
}

impl ClauseResult {
    pub fn passed(&self) -> bool {
        !self.applicable || self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub clauses: Vec<ClauseResult>,
}

impl PropertyReport {
    pub fn all_passed(&self) -> bool {
        self.clauses.iter().all(ClauseResult::passed)
    }

    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.clause == name)
    }
}

/// A random free word with `len` syllables and nonzero exponents in `[-max_exp, max_exp]`.
pub fn random_word(rng: &mut impl Rng, nfree: usize, len: usize, max_exp: i64) -> Word {
    let mut w = Word::identity();
    for _ in 0..len {
        let s = rng.gen_range(0..nfree);
        let mut e = rng.gen_range(1..=max_exp);
        if rng.gen_bool(0.5) {
            e = -e;
        }
        w.push(s, e);
    }
    w
}

/// `[A, G, ..., G]` with `k` copies of `G`.
fn iterated_commutator(g: &crate::pcgroup::Group, a: &Subgroup, k: usize) -> Subgroup {
    let whole = Subgroup::whole(g);
    (0..k).fold(a.clone(), |acc, _| commutator_subgroup(g, &acc, &whole))
}

/// Checks, on `samples` random free words each:
///
/// * `a`: `delta(f^p) = delta(f)^(pi(f)^(p-1)) ... delta(f)^pi(f) delta(f)`;
/// * `b`: `delta(f^p) = delta(f)^p [delta(f), pi(f)]^(p(p-1)/2)` when `[M, G, G] = 1`;
/// * `c(i)`: `delta(w)` lies in `[delta(F), G, ..., G]` (`i - 1` copies) for
///   `w` an `i`-fold commutator of random words, when `[M, G, ..., G] = 1`
///   (`i` copies);
/// * `commutator`: `delta([f, h]) = [delta(f), pi(h)] [pi(f), delta(h)]` when
///   `[M, Phi(G)] = 1` and `M <= Z_2(G)`.
pub fn verify_free_derivation_identities(
    delta: &Derivation<'_>,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<PropertyReport> {
    let g = delta.group();
    let p = g.prime() as i64;
    let nfree = delta.nfree();
    let module = delta.module().carrier();
    let max_exp = 2 * p;
    let word = |rng: &mut _| random_word(rng, nfree, 6, max_exp);
    let mut clauses = Vec::new();

    // Direct power law.
    let mut failures = 0;
    for _ in 0..samples {
        let f = word(rng);
        let (df, pf) = delta.eval_with_projection(&f)?;
        let folded = (0..p).fold(GroupElement::IDENTITY, |acc, _| g.mul(g.conj(acc, pf), df));
        if delta.eval(&f.pow(p))? != folded {
            failures += 1;
        }
    }
    clauses.push(ClauseResult {
        clause: "a".into(),
        applicable: true,
        trials: samples,
        failures,
    });

    // Power law through commutators, valid when the module has G-length 2.
    let applicable = iterated_commutator(g, module, 2).is_trivial();
    let mut failures = 0;
    if applicable {
        let binom = p * (p - 1) / 2;
        for _ in 0..samples {
            let f = word(rng);
            let (df, pf) = delta.eval_with_projection(&f)?;
            let rhs = g.mul(g.pow(df, p), g.pow(g.comm(df, pf), binom));
            if delta.eval(&f.pow(p))? != rhs {
                failures += 1;
            }
        }
    }
    clauses.push(ClauseResult {
        clause: "b".into(),
        applicable,
        trials: if applicable { samples } else { 0 },
        failures,
    });

    // Values on lower central terms of the free group.
    let class = lower_central_series(g)?.class();
    let image = normal_closure(g, delta.gen_images());
    for i in 2..=class + 1 {
        let applicable = iterated_commutator(g, module, i).is_trivial();
        let mut failures = 0;
        if applicable {
            let target = iterated_commutator(g, &image, i - 1);
            for _ in 0..samples {
                let ws: Vec<Word> = (0..i).map(|_| random_word(rng, nfree, 3, p)).collect();
                if !target.contains(delta.eval(&Word::left_normed(&ws))?) {
                    failures += 1;
                }
            }
        }
        clauses.push(ClauseResult {
            clause: format!("c{i}"),
            applicable,
            trials: if applicable { samples } else { 0 },
            failures,
        });
    }

    // Commutator values.
    let z2 = upper_central_series(g)?.zeta(2);
    let applicable =
        module.is_subgroup_of(&z2) && commutator_subgroup(g, module, &frattini(g)).is_trivial();
    let mut failures = 0;
    if applicable {
        for _ in 0..samples {
            let f = word(rng);
            let h = word(rng);
            let (df, pf) = delta.eval_with_projection(&f)?;
            let (dh, ph) = delta.eval_with_projection(&h)?;
            let rhs = g.mul(g.comm(df, ph), g.comm(pf, dh));
            if delta.eval(&Word::commutator(&f, &h))? != rhs {
                failures += 1;
            }
        }
    }
    clauses.push(ClauseResult {
        clause: "commutator".into(),
        applicable,
        trials: if applicable { samples } else { 0 },
        failures,
    });

    Ok(PropertyReport { clauses })
}
