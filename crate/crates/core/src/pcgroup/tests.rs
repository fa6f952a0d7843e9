use std::collections::{BTreeMap, HashSet};

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::test_groups::*;

/// 3x3 unitriangular matrices over F_p, stored as the three entries above the diagonal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Heis {
    x: u32,
    y: u32,
    z: u32,
}

impl Heis {
    fn mul(self, o: Heis, p: u32) -> Heis {
        // [[1,x,z],[0,1,y],[0,0,1]] * [[1,x',z'],[0,1,y'],[0,0,1]]
        Heis {
            x: (self.x + o.x) % p,
            y: (self.y + o.y) % p,
            z: (self.z + o.z + self.x * o.y) % p,
        }
    }
    fn pow(self, k: u32, p: u32) -> Heis {
        (0..k).fold(Heis { x: 0, y: 0, z: 0 }, |acc, _| acc.mul(self, p))
    }
    fn inv(self, p: u32) -> Heis {
        self.pow(p - 1, p)
    }
}

/// Matrix image of each ES27 normal form, built from the defining generators only.
fn es27_matrix_oracle() -> Vec<Heis> {
    let p = 3;
    let a1 = Heis { x: 1, y: 0, z: 0 };
    let a2 = Heis { x: 0, y: 1, z: 0 };
    // a3 = [a2, a1] = a2^-1 a1^-1 a2 a1
    let a3 = a2.inv(p).mul(a1.inv(p), p).mul(a2, p).mul(a1, p);
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out.push(a1.pow(i, p).mul(a2.pow(j, p), p).mul(a3.pow(k, p), p));
            }
        }
    }
    out
}

#[test]
fn es27_matches_heisenberg_matrices() {
    let g = es27();
    let images = es27_matrix_oracle();
    assert_eq!(images.iter().collect::<HashSet<_>>().len(), 27);
    for a in g.elements() {
        for b in g.elements() {
            let c = g.mul(a, b);
            assert_eq!(images[a.index()].mul(images[b.index()], 3), images[c.index()]);
        }
    }
}

type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply a then b (right action)
    a.iter().map(|&i| b[i]).collect()
}

fn perm_inv(a: &Perm) -> Perm {
    let mut r = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j] = i;
    }
    r
}

fn perm_pow(a: &Perm, k: u32) -> Perm {
    (0..k).fold((0..a.len()).collect(), |acc, _| compose(&acc, a))
}

fn perm_comm(a: &Perm, b: &Perm) -> Perm {
    compose(&compose(&compose(&perm_inv(a), &perm_inv(b)), a), b)
}

#[test]
fn w81_matches_wreath_product_permutations() {
    let g = w81();
    // C3 wr C3 on 9 points: t permutes the blocks {0,1,2},{3,4,5},{6,7,8}; b rotates block 0.
    let t: Perm = vec![3, 4, 5, 6, 7, 8, 0, 1, 2];
    let b: Perm = vec![1, 2, 0, 3, 4, 5, 6, 7, 8];
    let a3 = perm_comm(&b, &t);
    let a4 = perm_comm(&a3, &t);
    let gens = [t, b, a3, a4];
    let image = |e: &[u32]| {
        e.iter()
            .enumerate()
            .fold((0..9).collect::<Perm>(), |acc, (k, &x)| compose(&acc, &perm_pow(&gens[k], x)))
    };
    let images: Vec<Perm> = g.elements().map(|x| image(&g.exponents(x))).collect();
    assert_eq!(images.iter().collect::<HashSet<_>>().len(), 81);
    for a in g.elements() {
        for b in g.elements() {
            assert_eq!(compose(&images[a.index()], &images[b.index()]), images[g.mul(a, b).index()]);
        }
    }
}

#[test]
fn collect_examples_in_es27() {
    let g = es27();
    let e = |w: Word| g.exponents(g.collect(&w).unwrap());
    assert_eq!(e(Word::new(vec![(0, 1), (1, 1)])), vec![1, 1, 0]);
    // a2 a1 = a1 a2 [a2, a1] = a1 a2 a3
    assert_eq!(e(Word::new(vec![(1, 1), (0, 1)])), vec![1, 1, 1]);
    assert_eq!(e(Word::identity()), vec![0, 0, 0]);
    assert_eq!(e(Word::power_of(0, 3)), vec![0, 0, 0]);
}

#[test]
fn arithmetic_examples_in_es27() {
    let g = es27();
    let (a1, a2) = (g.generator(0), g.generator(1));
    assert!(g.comm(a1, a1).is_identity());
    assert_eq!(g.exponents(g.comm(a2, a1)), vec![0, 0, 1]);
    assert!(g.pow(a1, 3).is_identity());
    assert_eq!(g.mul(a1, g.inv(a1)), g.identity());
    assert_eq!(g.pow(a1, -1), g.inv(a1));
}

#[test]
fn foreign_elements_rejected() {
    let g = es27();
    let c3 = c3();
    let outsider = g.element(20).unwrap();
    assert!(matches!(c3.try_mul(outsider, c3.identity()), Err(Error::ForeignElement { .. })));
}

#[test]
fn corpus_presentations_are_consistent() {
    for g in corpus_groups() {
        let report = g.consistency_report().unwrap();
        assert!(report.is_consistent(), "{}: {:?}", g.name(), report.failures);
        assert!(report.checked > 0 || g.ngens() == 0);
    }
}

#[test]
fn enumeration_sizes() {
    assert_eq!(es27().elements().len(), 27);
    assert_eq!(c3().elements().len(), 3);
    assert_eq!(w81().elements().len(), 81);
    let all: Vec<_> = w81().elements().collect();
    assert!(all.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn order_bound_enforced() {
    let p = PcPresentation::parse("group Big\nprime 5\nngens 8\n").unwrap();
    assert!(matches!(Group::new(p), Err(Error::OrderBound { order: 390_625, .. })));
}

#[test]
fn inconsistent_presentation_rejected() {
    // In a group of exponent 3 generated by a1 and a2, a1^3 = a2 is incompatible
    // with [a2, a1] = a3: a2 would commute with a1.
    let p = PcPresentation::parse("group Bad\nprime 3\nngens 3\npow 1 = a2\ncomm 2 1 = a3\n").unwrap();
    let report = check_consistency(&p).unwrap();
    assert!(!report.is_consistent());
    assert!(matches!(Group::new(p), Err(Error::Inconsistent { .. })));
}

#[test]
fn mutated_w81_breaks_consistency() {
    let mut m = w81().presentation().clone();
    // a1^3 = a2 forces a2 to commute with a1, contradicting [a2, a1] = a3.
    m.set_power(0, Word::generator(1));
    assert!(m.validate().is_ok());
    assert!(!check_consistency(&m).unwrap().is_consistent());
}

#[test]
fn structural_rejection_precedes_consistency() {
    let mut comms = BTreeMap::new();
    comms.insert((1, 0), Word::generator(0));
    let p = PcPresentation::from_parts("ES27bad", 3, 3, BTreeMap::new(), comms);
    assert!(matches!(check_consistency(&p), Err(Error::IndexOrder { .. })));
    assert!(matches!(Group::new(p), Err(Error::IndexOrder { .. })));
}

fn exhaustive_group_laws(g: &Group) {
    let e = g.identity();
    for a in g.elements() {
        assert_eq!(g.mul(a, e), a);
        assert_eq!(g.mul(e, a), a);
        assert_eq!(g.inv(g.inv(a)), a);
        assert!(g.mul(a, g.inv(a)).is_identity());
        for b in g.elements() {
            assert_eq!(g.inv(g.comm(a, b)), g.comm(b, a));
            let ab = g.mul(a, b);
            for c in g.elements() {
                assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)));
            }
        }
    }
}

#[test]
fn group_laws_exhaustive_small_corpus() {
    for g in corpus_groups().iter().filter(|g| g.order() <= 81) {
        exhaustive_group_laws(g);
    }
}

#[test]
fn group_laws_exhaustive_order_243() {
    let g = m243();
    let e = g.identity();
    for a in g.elements() {
        assert_eq!(g.mul(a, e), a);
        assert_eq!(g.inv(g.inv(a)), a);
        for b in g.elements() {
            assert_eq!(g.inv(g.comm(a, b)), g.comm(b, a));
            let ab = g.mul(a, b);
            for c in g.elements() {
                assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)));
            }
        }
    }
}

#[test]
fn table_free_multiplication_agrees_with_table() {
    let g = m243();
    let untabled = Group::with_bounds(g.presentation().clone(), DEFAULT_ORDER_BOUND, 0).unwrap();
    for a in g.elements().step_by(5) {
        for b in g.elements().step_by(3) {
            assert_eq!(g.mul(a, b), untabled.mul(a, b));
        }
    }
}

fn word_strategy(n: usize, p: i64) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..n, -2 * p..=2 * p), 0..24).prop_map(Word::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn collect_is_idempotent_m243(w in word_strategy(5, 3)) {
        let g = m243();
        let x = g.collect(&w).unwrap();
        prop_assert_eq!(g.collect(&g.word_of(x)).unwrap(), x);
    }

    #[test]
    fn collect_is_idempotent_w81(w in word_strategy(4, 3)) {
        let g = w81();
        let x = g.collect(&w).unwrap();
        prop_assert_eq!(g.collect(&g.word_of(x)).unwrap(), x);
    }

    #[test]
    fn collect_is_idempotent_m625(w in word_strategy(4, 5)) {
        let g = m625();
        let x = g.collect(&w).unwrap();
        prop_assert_eq!(g.collect(&g.word_of(x)).unwrap(), x);
    }

    #[test]
    fn collect_is_a_homomorphism_from_words(a in word_strategy(5, 3), b in word_strategy(5, 3)) {
        let g = m243();
        let ab = g.collect(&a.mul(&b)).unwrap();
        prop_assert_eq!(ab, g.mul(g.collect(&a).unwrap(), g.collect(&b).unwrap()));
        prop_assert_eq!(g.collect(&a.inverse()).unwrap(), g.inv(g.collect(&a).unwrap()));
    }

    #[test]
    fn presentation_text_round_trips(seed in 0usize..6) {
        let g = &corpus_groups()[seed % corpus_groups().len()];
        let text = g.presentation().to_text();
        prop_assert_eq!(&PcPresentation::parse(&text).unwrap(), g.presentation());
    }
}
