use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::structure::{center, frattini, lower_central_series, omega1, upper_central_series, Subgroup};
use crate::test_groups::*;

fn omega1_z2(g: &Group) -> Subgroup {
    let z2 = upper_central_series(g).unwrap().zeta(2);
    omega1(g, &z2).unwrap()
}

fn derivation<'g>(g: &'g Group, carrier: Subgroup, u: GroupElement, v: GroupElement) -> Derivation<'g> {
    let module = GroupModule::new(g, carrier).unwrap();
    extend_from_generators(module, vec![u, v], vec![g.generator(0), g.generator(1)]).unwrap()
}

/// Evaluation by recursive halving with the cocycle law, independent of the
/// left-to-right fold.
fn split_eval(d: &Derivation<'_>, letters: &[(usize, i64)]) -> (GroupElement, GroupElement) {
    let g = d.group();
    match letters {
        [] => (GroupElement::IDENTITY, GroupElement::IDENTITY),
        [(s, e)] => {
            let x = d.gen_map()[*s];
            let dx = d.gen_images()[*s];
            if *e == 1 {
                (dx, x)
            } else {
                let xi = g.inv(x);
                (g.conj(g.inv(dx), xi), xi)
            }
        }
        _ => {
            let (l, r) = letters.split_at(letters.len() / 2);
            let (dl, pl) = split_eval(d, l);
            let (dr, pr) = split_eval(d, r);
            (g.mul(g.conj(dl, pr), dr), g.mul(pl, pr))
        }
    }
}

fn letters(w: &Word) -> Vec<(usize, i64)> {
    w.factors()
        .iter()
        .flat_map(|&(s, e)| std::iter::repeat_n((s, e.signum()), e.unsigned_abs() as usize))
        .collect()
}

fn sample_pairs(m: &Subgroup, rng: &mut ChaCha8Rng, k: usize) -> Vec<(GroupElement, GroupElement)> {
    let els = m.elements();
    let mut pairs = vec![(els[1], GroupElement::IDENTITY), (GroupElement::IDENTITY, els[1])];
    while pairs.len() < k {
        pairs.push((els[rng.gen_range(0..els.len())], els[rng.gen_range(0..els.len())]));
    }
    pairs
}

#[test]
fn module_requires_normal_abelian_carrier() {
    let g = es27();
    assert!(matches!(GroupModule::new(&g, Subgroup::whole(&g)), Err(Error::NotAbelian)));
    let h = crate::structure::closure(&g, &[g.generator(0)]);
    assert!(matches!(GroupModule::new(&g, h), Err(Error::NotNormal)));
}

#[test]
fn extend_rejects_bad_images() {
    let g = m243();
    let m = omega1_z2(&g);
    let module = GroupModule::new(&g, m.clone()).unwrap();
    let err = extend_from_generators(module.clone(), vec![g.generator(0), g.identity()], vec![g.generator(0), g.generator(1)]);
    assert!(matches!(err, Err(Error::Derivation(_))));
    let err = extend_from_generators(module, vec![g.identity()], vec![g.generator(0), g.generator(1)]);
    assert!(matches!(err, Err(Error::Derivation(_))));
}

#[test]
fn zero_derivation_vanishes() {
    let g = m243();
    let d = derivation(&g, omega1_z2(&g), g.identity(), g.identity());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        assert!(d.eval(&random_word(&mut rng, 2, 8, 6)).unwrap().is_identity());
    }
    assert!(check_relation_kernel(&d, &extraspecial_relators(3)).unwrap().kernel_ok);
    let induced = induce_on_quotient(&d, &extraspecial_relators(3), &mut rng).unwrap();
    assert!(induced.is_zero());
    let phi = lift_to_automorphism(&induced).unwrap();
    assert!(phi.is_identity(&g));
    let report = verify_free_derivation_identities(&d, 50, &mut rng).unwrap();
    assert!(report.all_passed());
}

#[test]
fn eval_examples() {
    let g = m243();
    let m = omega1_z2(&g);
    let (u, v) = (m.elements()[1], m.elements()[4]);
    let d = derivation(&g, m, u, v);
    let x = Word::generator(0);
    let y = Word::generator(1);
    assert!(d.eval(&Word::identity()).unwrap().is_identity());
    assert_eq!(d.eval(&x).unwrap(), u);
    assert_eq!(d.eval(&y).unwrap(), v);
    assert!(d.eval(&Word::new(vec![(0, 1), (0, -1)])).unwrap().is_identity());
    let yx = Word::commutator(&y, &x);
    assert_eq!(d.eval(&yx).unwrap(), split_eval(&d, &letters(&yx)).0);
    let expected = g.mul(g.comm(v, g.generator(0)), g.comm(g.generator(1), u));
    assert_eq!(d.eval(&yx).unwrap(), expected);
    assert!(matches!(d.eval(&Word::generator(2)), Err(Error::Derivation(_))));
}

#[test]
fn cocycle_law_on_random_word_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for g in [m243(), t729()] {
        let m = omega1_z2(&g);
        for (u, v) in sample_pairs(&m, &mut rng, 4) {
            let d = derivation(&g, m.clone(), u, v);
            for _ in 0..1000 {
                let w1 = random_word(&mut rng, 2, 5, 6);
                let w2 = random_word(&mut rng, 2, 5, 6);
                let (d1, _) = d.eval_with_projection(&w1).unwrap();
                let (d2, p2) = d.eval_with_projection(&w2).unwrap();
                assert_eq!(d.eval(&w1.mul(&w2)).unwrap(), g.mul(g.conj(d1, p2), d2));
            }
        }
    }
}

#[test]
fn fold_agrees_with_split_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = t729();
    let m = omega1_z2(&g);
    for (u, v) in sample_pairs(&m, &mut rng, 6) {
        let d = derivation(&g, m.clone(), u, v);
        for _ in 0..300 {
            let w = random_word(&mut rng, 2, 8, 6);
            let (dw, pw) = d.eval_with_projection(&w).unwrap();
            assert_eq!((dw, pw), split_eval(&d, &letters(&w)));
            assert_eq!(pw, d.project(&w).unwrap());
        }
    }
}

#[test]
fn inverse_law_and_uniqueness() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = m243();
    let m = omega1_z2(&g);
    let (u, v) = (m.elements()[2], m.elements()[7]);
    let d1 = derivation(&g, m.clone(), u, v);
    let d2 = derivation(&g, m, u, v);
    for _ in 0..1000 {
        let w = random_word(&mut rng, 2, 6, 6);
        let (dw, pw) = d1.eval_with_projection(&w).unwrap();
        let pinv = g.inv(pw);
        assert_eq!(d1.eval(&w.inverse()).unwrap(), g.conj(g.inv(dw), pinv));
        assert_eq!(dw, d2.eval(&w).unwrap());
    }
}

#[test]
fn every_assignment_vanishes_on_the_extraspecial_relators() {
    let rels = extraspecial_relators(3);
    for g in [m243(), t729()] {
        let m = omega1_z2(&g);
        for &u in m.elements() {
            for &v in m.elements() {
                let d = derivation(&g, m.clone(), u, v);
                assert!(check_relation_kernel(&d, &rels).unwrap().kernel_ok, "{}", g.name());
            }
        }
    }
}

#[test]
fn kernel_check_discriminates() {
    let g = m243();
    let z3 = upper_central_series(&g).unwrap().zeta(3);
    let relators = extraspecial_relators(3);
    let failing = z3.elements().iter().copied().find(|&u| {
        let d = derivation(&g, z3.clone(), u, g.identity());
        !check_relation_kernel(&d, &relators).unwrap().kernel_ok
    });
    let u = failing.expect("some assignment into Z_3 does not vanish on the relators");
    let d = derivation(&g, z3, u, g.identity());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    assert!(matches!(
        induce_on_quotient(&d, &relators, &mut rng),
        Err(Error::Derivation(_))
    ));
}

#[test]
fn induced_derivation_matches_assignment_and_is_a_derivation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = m243();
    let m = omega1_z2(&g);
    let (a1, a2) = (g.generator(0), g.generator(1));
    for (u, v) in sample_pairs(&m, &mut rng, 5) {
        let d = derivation(&g, m.clone(), u, v);
        let di = induce_on_quotient(&d, &extraspecial_relators(3), &mut rng).unwrap();
        assert_eq!((di.eval(a1), di.eval(a2)), (u, v));
        for x in g.elements() {
            assert_eq!(d.project(di.preimage(x)).unwrap(), x);
            for y in g.elements().step_by(7) {
                let lhs = di.eval(g.mul(x, y));
                assert_eq!(lhs, g.mul(g.conj(di.eval(x), y), di.eval(y)));
            }
        }
    }
}

#[test]
fn induced_values_agree_on_second_preimages() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let g = t729();
    let m = omega1_z2(&g);
    let d = derivation(&g, m.clone(), m.elements()[5], m.elements()[13]);
    let di = induce_on_quotient(&d, &extraspecial_relators(3), &mut rng).unwrap();
    let pc: Vec<Word> = g.generators().iter().map(|&a| di.preimage(a).clone()).collect();
    for _ in 0..20 {
        let x = g.element(rng.gen_range(0..g.order())).unwrap();
        let mut w = Word::identity();
        for (i, &e) in g.exponents(x).iter().enumerate() {
            w = w.mul(&pc[i].pow(e as i64));
        }
        assert_eq!(d.eval(&w).unwrap(), di.eval(x));
    }
}

#[test]
fn lifts_are_order_p_automorphisms_fixing_frattini() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let g = m243();
    let m = omega1_z2(&g);
    let phi_g = frattini(&g);
    for (u, v) in sample_pairs(&m, &mut rng, 6) {
        let d = derivation(&g, m.clone(), u, v);
        let di = induce_on_quotient(&d, &extraspecial_relators(3), &mut rng).unwrap();
        let phi = lift_to_automorphism(&di).unwrap();
        assert!(phi.is_automorphism());
        assert!(!phi.is_identity(&g));
        for x in g.elements() {
            assert_eq!(phi.apply(&g, x), g.mul(x, di.eval(x)));
        }
        // delta vanishes on gamma_3 and is central on Phi = gamma_2, so phi
        // fixes Phi exactly when delta([y, x]) = 1.
        let gamma3 = lower_central_series(&g).unwrap().gamma(3);
        assert!(gamma3.elements().iter().all(|&h| phi.apply(&g, h) == h));
        assert!(phi_g.elements().iter().all(|&h| center(&g).contains(di.eval(h))));
        let on_commutator = di.eval(g.comm(g.generator(1), g.generator(0)));
        assert_eq!(on_commutator, g.mul(g.comm(v, g.generator(0)), g.comm(g.generator(1), u)));
        let fixes = phi_g.elements().iter().all(|&h| phi.apply(&g, h) == h);
        assert_eq!(fixes, on_commutator.is_identity());
        assert!(phi.pow(&g, 3).is_identity(&g));
    }
}

#[test]
fn lift_without_vanishing_on_module_is_an_endomorphism() {
    let g = e9();
    let whole = Subgroup::whole(&g);
    let a1 = g.generator(0);
    let d = derivation(&g, whole, g.pow(a1, 2), g.identity());
    let rels = vec![Word::power_of(0, 3), Word::power_of(1, 3), Word::commutator(&Word::generator(1), &Word::generator(0))];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let di = induce_on_quotient(&d, &rels, &mut rng).unwrap();
    let phi = lift_to_automorphism(&di).unwrap();
    assert_eq!(phi.kind(), EndoKind::Endomorphism);
    assert!(phi.images()[0].is_identity());
}

#[test]
fn free_identities_hold_on_eligible_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for g in [m243(), t729()] {
        let m = omega1_z2(&g);
        let d = derivation(&g, m.clone(), m.elements()[1], m.elements()[m.order() - 1]);
        let report = verify_free_derivation_identities(&d, 500, &mut rng).unwrap();
        assert!(report.all_passed(), "{}: {report:?}", g.name());
        assert!(report.clause("a").unwrap().applicable);
        assert!(report.clause("b").unwrap().applicable);
        assert!(report.clause("c3").unwrap().applicable);
        assert!(report.clause("commutator").unwrap().applicable);
        for f in 0..50 {
            let w = random_word(&mut rng, 2, 6, 6).pow(3);
            assert!(d.eval(&w).unwrap().is_identity(), "sample {f}");
        }
    }
}

#[test]
fn endo_basics() {
    let g = es27();
    let id = Endo::identity(&g);
    assert!(id.is_identity(&g));
    let h = g.generator(0);
    let c = Endo::conjugation(&g, h);
    assert!(c.is_automorphism());
    assert_eq!(Endo::from_images(&g, c.images().to_vec()).unwrap(), c);
    for x in g.elements() {
        assert_eq!(c.apply(&g, x), g.conj(x, h));
    }
    assert!(c.pow(&g, 3).is_identity(&g));
    assert!(!c.pow(&g, 2).is_identity(&g));
    let bad = vec![g.generator(2), g.generator(2), g.generator(2)];
    assert!(Endo::from_images(&g, bad).is_err());
    let trivial = Endo::from_images(&g, vec![g.identity(); 3]).unwrap();
    assert_eq!(trivial.kind(), EndoKind::Endomorphism);
}
