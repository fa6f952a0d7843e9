use std::collections::HashSet;

use super::*;
use crate::berkovich::{certify, CertifyConfig, Checks, GroupInfo, Method, NonInnerCertificate, OracleStatus, CERT_VERSION};
use crate::structure::center;
use crate::test_groups::*;

/// Automorphisms by testing every tuple of images for all pc generators.
fn brute_force_automorphisms(g: &Group) -> HashSet<Vec<GroupElement>> {
    let n = g.ngens();
    let mut out = HashSet::new();
    let total = g.order().pow(n as u32);
    for mut index in 0..total {
        let mut images = Vec::with_capacity(n);
        for _ in 0..n {
            images.push(g.element(index % g.order()).unwrap());
            index /= g.order();
        }
        let hom = respects_relations(g, &images);
        if !hom {
            continue;
        }
        let mut span = HashSet::from([GroupElement::IDENTITY]);
        let mut frontier = vec![GroupElement::IDENTITY];
        while let Some(a) = frontier.pop() {
            for &y in &images {
                let b = g.mul(a, y);
                if span.insert(b) {
                    frontier.push(b);
                }
            }
        }
        if span.len() == g.order() {
            out.insert(images);
        }
    }
    out
}

fn image_set(autos: &[Endo]) -> HashSet<Vec<GroupElement>> {
    autos.iter().map(|e| e.images().to_vec()).collect()
}

#[test]
fn automorphism_counts() {
    assert_eq!(all_automorphisms(&c3(), 729).unwrap().len(), 2);
    // |GL(2,3)| = 48
    assert_eq!(all_automorphisms(&e9(), 729).unwrap().len(), 48);
    // |GL(3,3)| = 26 * 24 * 18
    assert_eq!(all_automorphisms(&e27(), 729).unwrap().len(), 11232);
    // Out of the extraspecial group of order 27 and exponent 3 is GL(2,3).
    assert_eq!(all_automorphisms(&es27(), 729).unwrap().len(), 9 * 48);
}

#[test]
fn enumeration_matches_brute_force() {
    for g in [c3(), e9(), es27()] {
        let autos = all_automorphisms(&g, 729).unwrap();
        assert_eq!(image_set(&autos), brute_force_automorphisms(&g), "{}", g.name());
        assert_eq!(image_set(&autos).len(), autos.len());
    }
}

#[test]
fn enumeration_is_sorted_and_closed_under_composition() {
    let g = w81();
    let autos = all_automorphisms(&g, 729).unwrap();
    assert!(autos.windows(2).all(|w| w[0].images() < w[1].images()));
    let set = image_set(&autos);
    for a in autos.iter().step_by(7) {
        for b in autos.iter().step_by(11) {
            assert!(set.contains(a.compose(&g, b).images()));
        }
    }
}

#[test]
fn bound_is_enforced() {
    let err = all_automorphisms(&m243(), 81).unwrap_err();
    assert!(matches!(err, Error::OrderBound { order: 243, bound: 81 }));
}

#[test]
fn inner_count_law() {
    for g in corpus_groups().into_iter().chain([t729(), c3()]) {
        let inner = inner_automorphisms(&g);
        assert_eq!(inner.len(), g.order() / center(&g).order(), "{}", g.name());
    }
    assert_eq!(inner_automorphisms(&es27()).len(), 9);
    assert_eq!(inner_automorphisms(&w81()).len(), 27);
    let e = inner_automorphisms(&e9());
    assert_eq!(e.len(), 1);
    assert!(e[0].is_identity(&e9()));
}

#[test]
fn inner_automorphisms_are_automorphisms() {
    for g in corpus_groups() {
        let all = image_set(&all_automorphisms(&g, 729).unwrap());
        let inner = inner_automorphisms(&g);
        assert_eq!(all.len() % inner.len(), 0, "{}", g.name());
        assert!(inner.iter().all(|e| all.contains(e.images())), "{}", g.name());
    }
}

#[test]
fn endo_order_examples() {
    let g = e9();
    assert_eq!(endo_order(&g, &Endo::identity(&g)).unwrap(), 1);
    let inversion = Endo::from_images(&g, g.generators().iter().map(|&a| g.inv(a)).collect()).unwrap();
    assert_eq!(endo_order(&g, &inversion).unwrap(), 2);
    let h = es27();
    assert_eq!(endo_order(&h, &Endo::conjugation(&h, h.generator(0))).unwrap(), 3);
    let zero = Endo::from_images(&g, vec![GroupElement::IDENTITY; 2]).unwrap();
    assert!(endo_order(&g, &zero).is_err());
}

#[test]
fn search_counts_are_consistent() {
    for g in corpus_groups() {
        let r = search(&g, 729).unwrap();
        assert_eq!(r.inner, g.order() / center(&g).order());
        assert_eq!(r.total % r.inner, 0);
        assert!(r.noninner_order_p > 0, "{} has no non-inner order-p automorphism", g.name());
        assert!(r.representative.is_some());
    }
}

#[test]
fn every_small_corpus_group_has_a_noninner_order_p_automorphism() {
    for g in corpus_groups() {
        let phi = find_noninner_order_p(&g, 729).unwrap().unwrap_or_else(|| panic!("{}", g.name()));
        assert_eq!(endo_order(&g, &phi).unwrap(), g.prime() as usize);
        assert!(g
            .elements()
            .all(|h| g.generators().iter().zip(phi.images()).any(|(&a, &b)| g.conj(a, h) != b)));
    }
}

fn pipeline_cert(g: &Group) -> NonInnerCertificate {
    let config = CertifyConfig {
        seed: 42,
        ..CertifyConfig::default()
    };
    certify(g, &config).unwrap()
}

#[test]
fn verifier_accepts_emitted_certificates() {
    for g in corpus_groups() {
        let cert = pipeline_cert(&g);
        let report = verify_certificate(&g, &cert).unwrap();
        assert!(report.valid, "{}: {:?}", g.name(), report.outcomes);
        assert!(report.inner_witness.is_none());
    }
}

#[test]
fn verifier_rejects_tampering() {
    let g = m243();
    let cert = pipeline_cert(&g);
    assert_eq!(cert.method, Method::Pipeline);

    let mut flipped = cert.clone();
    flipped.checks.order_p = false;
    assert!(!verify_certificate(&g, &flipped).unwrap().valid);

    let mut perturbed = cert.clone();
    perturbed.images[2][4] = (perturbed.images[2][4] + 1) % 3;
    let report = verify_certificate(&g, &perturbed).unwrap();
    assert!(!report.valid);
    assert!(!report.outcomes.iter().find(|o| o.check == "homomorphism").unwrap().recomputed);

    let mut short = cert.clone();
    short.images.pop();
    assert!(matches!(verify_certificate(&g, &short), Err(Error::MalformedCertificate(_))));

    let mut digit = cert.clone();
    digit.images[0][0] = 7;
    assert!(matches!(verify_certificate(&g, &digit), Err(Error::MalformedCertificate(_))));

    assert!(matches!(verify_certificate(&es27(), &cert), Err(Error::MalformedCertificate(_))));
}

#[test]
fn verifier_finds_inner_witness() {
    let g = m243();
    let h = g.generator(1);
    let phi = Endo::conjugation(&g, h);
    let cert = NonInnerCertificate {
        cert_version: CERT_VERSION,
        method: Method::Oracle,
        group: GroupInfo::of(&g),
        class: 4,
        z2_type: "C3 x C3".into(),
        assignment: None,
        images: phi.exponent_images(&g),
        checks: Checks {
            order_p: true,
            fixes_frattini: false,
            homomorphism: true,
            bijective: true,
            inner_witness: None,
            oracle_confirmed: OracleStatus::NOT_RUN,
        },
    };
    let report = verify_certificate(&g, &cert).unwrap();
    assert!(!report.valid);
    let w = g.from_exponents(report.inner_witness.as_ref().unwrap()).unwrap();
    assert!(center(&g).contains(g.mul(g.inv(w), h)));
    let outcome = |name: &str| report.outcomes.iter().find(|o| o.check == name).unwrap().recomputed;
    assert!(outcome("order_p"));
    assert!(outcome("homomorphism"));
    assert!(!outcome("non_inner"));
}

#[test]
fn confirms_classifies_pipeline_maps() {
    let g = m243();
    let cert = pipeline_cert(&g);
    assert_eq!(cert.checks.oracle_confirmed, OracleStatus::Ran(true));
    let images = cert.images.iter().map(|e| g.from_exponents(e).unwrap()).collect();
    let phi = Endo::from_images(&g, images).unwrap();
    assert!(confirms(&g, &phi, 729).unwrap());
    assert!(!confirms(&g, &Endo::conjugation(&g, g.generator(0)), 729).unwrap());
    assert!(!confirms(&g, &Endo::identity(&g), 729).unwrap());
}
