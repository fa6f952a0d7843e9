//! Non-inner automorphisms of order `p` for thin `p`-groups of class at least 4.
//!
//! Each assignment `x -> u`, `y -> v` with `u, v` in `Omega_1(Z_2(G))` extends
//! to a derivation on the free group, vanishes on the relators of the
//! extraspecial quotient `G/gamma_3(G)`, induces a derivation on `G` and lifts
//! to the automorphism `g -> g delta(g)`. Innerness is decided by scanning
//! for a conjugating element.

mod certificate;

pub use certificate::{
    Assignment, Checks, GroupInfo, Method, NonInnerCertificate, NotRun, OracleStatus, CERT_VERSION,
};

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derivation::{
    extend_from_generators, extraspecial_relators, induce_on_quotient, lift_to_automorphism,
    respects_relations, Endo, GroupModule,
};
use crate::error::{Error, Result};
use crate::oracle;
use crate::pcgroup::{Group, GroupElement};
use crate::structure::{
    abelian_invariants, closure, omega1, pc_generating_subset, standing_assumptions, AssumptionReport,
    Structure, Subgroup, DEFAULT_LATTICE_BOUND,
};

/// Number of random elements on which a found inner witness is re-checked.
const INNER_CONFIRMATIONS: usize = 10;

/// Isomorphism type of `Z_2(G)` as it matters for the case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Z2Case {
    /// Elementary abelian of rank 3.
    Elementary3,
    /// `C_{p^2} x C_p`.
    Cyclic2Times1,
    /// Any other abelian type, by abelian invariants.
    OtherAbelian(Vec<u32>),
    NonAbelian,
}

impl Z2Case {
    pub fn classify(g: &Group, z2: &Subgroup) -> Self {
        match abelian_invariants(g, z2) {
            Ok(inv) if inv == [1, 1, 1] => Z2Case::Elementary3,
            Ok(inv) if inv == [2, 1] => Z2Case::Cyclic2Times1,
            Ok(inv) => Z2Case::OtherAbelian(inv),
            Err(_) => Z2Case::NonAbelian,
        }
    }
}

/// Run-wide settings for certification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyConfig {
    pub oracle_bound: usize,
    pub lattice_bound: usize,
    pub seed: u64,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        Self {
            oracle_bound: oracle::DEFAULT_ORACLE_BOUND,
            lattice_bound: DEFAULT_LATTICE_BOUND,
            seed: 0,
        }
    }
}

/// Structural data of one group, prepared for the construction.
#[derive(Debug, Clone)]
pub struct Pipeline<'g> {
    group: &'g Group,
    structure: Structure,
    assumptions: AssumptionReport,
    z2_case: Z2Case,
    omega: Option<Subgroup>,
}

impl<'g> Pipeline<'g> {
    pub fn new(group: &'g Group, lattice_bound: usize) -> Result<Self> {
        let structure = Structure::compute(group)?;
        let assumptions = standing_assumptions(group, &structure, lattice_bound)?;
        let z2 = structure.upper.zeta(2);
        let z2_case = Z2Case::classify(group, &z2);
        let omega = omega1(group, &z2).ok();
        Ok(Self {
            group,
            structure,
            assumptions,
            z2_case,
            omega,
        })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn assumptions(&self) -> &AssumptionReport {
        &self.assumptions
    }

    pub fn z2_case(&self) -> &Z2Case {
        &self.z2_case
    }

    pub fn is_eligible(&self) -> bool {
        self.assumptions.construction_eligible()
    }

    fn ensure_eligible(&self) -> Result<&Subgroup> {
        if !self.is_eligible() {
            return Err(Error::Ineligible(self.assumptions.construction_failures().join(", ")));
        }
        self.omega
            .as_ref()
            .ok_or_else(|| Error::Ineligible("Z_2 is not abelian".into()))
    }

    /// `Omega_1(Z_2(G))`.
    pub fn omega(&self) -> Result<&Subgroup> {
        self.ensure_eligible()
    }

    /// All pairs `(u, v)` from `Omega_1(Z_2(G))`, lexicographic in the normal forms.
    pub fn candidate_assignments(&self) -> Result<Vec<(GroupElement, GroupElement)>> {
        let omega = self.ensure_eligible()?;
        let els = omega.elements();
        Ok(els.iter().flat_map(|&u| els.iter().map(move |&v| (u, v))).collect())
    }

    /// The automorphism lifted from the assignment `x -> u`, `y -> v`.
    pub fn build_automorphism(&self, u: GroupElement, v: GroupElement, rng: &mut impl Rng) -> Result<Endo> {
        let g = self.group;
        let omega = self.ensure_eligible()?;
        let module = GroupModule::new(g, omega.clone())?;
        let delta = extend_from_generators(module, vec![u, v], vec![g.generator(0), g.generator(1)])?;
        let induced = induce_on_quotient(&delta, &extraspecial_relators(g.prime()), rng)?;
        let phi = lift_to_automorphism(&induced)?;
        if !phi.is_automorphism() {
            return Err(Error::Internal("lifted map is not an automorphism".into()));
        }
        Ok(phi)
    }

    /// `|Z_3(G)/Z(G)|`, counted as distinct conjugation maps by elements of `Z_3(G)`.
    pub fn inner_count_from_z3(&self) -> usize {
        inner_count_from_z3(self.group, &self.structure)
    }

    /// Runs the case analysis and returns a certificate with all checks filled
    /// in except the oracle confirmation.
    pub fn find_noninner_order_p(&self, rng: &mut impl Rng) -> Result<NonInnerCertificate> {
        let omega = self.ensure_eligible()?.clone();
        let g = self.group;
        let ((u, v), phi) = match &self.z2_case {
            Z2Case::Cyclic2Times1 => {
                let z = &self.structure.center;
                let u = omega
                    .elements()
                    .iter()
                    .copied()
                    .find(|&x| !z.contains(x))
                    .ok_or_else(|| Error::Internal("Omega_1(Z_2) is central".into()))?;
                let mut chosen = None;
                for &v in &omega.elements()[1..] {
                    let phi = self.build_automorphism(u, v, rng)?;
                    let fixes = self.fixes_frattini(&phi);
                    if chosen.is_none() || fixes {
                        chosen = Some((v, phi));
                    }
                    if fixes {
                        break;
                    }
                }
                let (v, phi) = chosen.ok_or_else(|| Error::Internal("Omega_1(Z_2) is trivial".into()))?;
                if let Some(h) = is_inner(g, &phi, rng)? {
                    return Err(Error::Internal(format!(
                        "assignment with non-central u = {} lifts to conjugation by {}",
                        g.display(u),
                        g.display(h)
                    )));
                }
                ((u, v), phi)
            }
            _ => self.first_noninner_candidate(rng)?,
        };
        let checks = compute_checks(g, &phi, None, OracleStatus::NOT_RUN);
        Ok(NonInnerCertificate {
            cert_version: CERT_VERSION,
            method: Method::Pipeline,
            group: GroupInfo::of(g),
            class: self.structure.class(),
            z2_type: self.assumptions.z2_type.clone(),
            assignment: Some(Assignment {
                u: g.exponents(u),
                v: g.exponents(v),
            }),
            images: phi.exponent_images(g),
            checks,
        })
    }

    /// Whether `phi` fixes `Phi(G)` elementwise. A lift `g -> g delta(g)`
    /// does so exactly when `delta([y, x]) = [v, x][y, u]` is trivial.
    pub fn fixes_frattini(&self, phi: &Endo) -> bool {
        let g = self.group;
        self.structure.frattini.elements().iter().all(|&h| phi.apply(g, h) == h)
    }

    /// First assignment, in candidate order, whose lift is non-inner and
    /// fixes `Phi(G)`; failing that, the first non-inner lift.
    fn first_noninner_candidate(&self, rng: &mut impl Rng) -> Result<((GroupElement, GroupElement), Endo)> {
        let g = self.group;
        let mut fallback = None;
        for (u, v) in self.candidate_assignments()? {
            if u.is_identity() && v.is_identity() {
                continue;
            }
            let phi = self.build_automorphism(u, v, rng)?;
            if is_inner(g, &phi, rng)?.is_none() {
                if self.fixes_frattini(&phi) {
                    return Ok(((u, v), phi));
                }
                fallback.get_or_insert(((u, v), phi));
            }
        }
        fallback.ok_or_else(|| Error::Internal("every candidate assignment lifts to an inner automorphism".into()))
    }
}

/// `|Z_3(G)/Z(G)|` as the number of distinct conjugation maps by `Z_3(G)`.
pub fn inner_count_from_z3(g: &Group, s: &Structure) -> usize {
    let z3 = s.upper.zeta(3);
    let xs = g.generators();
    let maps: HashSet<Vec<GroupElement>> = z3
        .elements()
        .iter()
        .map(|&h| xs.iter().map(|&a| g.conj(a, h)).collect())
        .collect();
    debug_assert_eq!(maps.len(), z3.order() / s.center.order());
    maps.len()
}

/// First `h` in element order with `phi(a) = a^h` on a generating set of
/// pc generators, re-checked on random elements.
pub fn is_inner(g: &Group, phi: &Endo, rng: &mut impl Rng) -> Result<Option<GroupElement>> {
    let gens: Vec<usize> = pc_generating_subset(g);
    let images = phi.images();
    let witness = g.elements().find(|&h| {
        gens.iter().all(|&i| g.conj(g.generator(i), h) == images[i])
    });
    if let Some(h) = witness {
        for _ in 0..INNER_CONFIRMATIONS {
            let x = g.element(rng.gen_range(0..g.order()))?;
            if phi.apply(g, x) != g.conj(x, h) {
                return Err(Error::Internal(format!(
                    "conjugation by {} agrees on generators but not on {}",
                    g.display(h),
                    g.display(x)
                )));
            }
        }
    }
    Ok(witness)
}

/// The check block for an automorphism, computed through the library layers.
pub fn compute_checks(g: &Group, phi: &Endo, witness: Option<GroupElement>, oracle: OracleStatus) -> Checks {
    let p = g.prime();
    let phi_g = crate::structure::frattini(g);
    let powered = phi.pow(g, p);
    Checks {
        order_p: powered.is_identity(g) && !phi.is_identity(g),
        fixes_frattini: phi_g.elements().iter().all(|&h| phi.apply(g, h) == h),
        homomorphism: respects_relations(g, phi.images()),
        bijective: closure(g, phi.images()).order() == g.order(),
        inner_witness: witness.map(|h| g.exponents(h)),
        oracle_confirmed: oracle,
    }
}

/// Certificate from the exhaustive oracle, for groups outside the construction.
pub fn route_fallback(g: &Group, config: &CertifyConfig) -> Result<NonInnerCertificate> {
    if g.order() > config.oracle_bound {
        return Err(Error::CannotCertify(format!(
            "group of order {} is outside both the construction and the oracle bound {}",
            g.order(),
            config.oracle_bound
        )));
    }
    let s = Structure::compute(g)?;
    let z2 = s.upper.zeta(2);
    let z2_type = match abelian_invariants(g, &z2) {
        Ok(inv) => crate::structure::assumptions::z2_type_name(g.prime(), &inv),
        Err(_) => "nonabelian".into(),
    };
    let phi = oracle::find_noninner_order_p(g, config.oracle_bound)?.ok_or_else(|| {
        Error::CannotCertify("exhaustive search found no non-inner automorphism of order p".into())
    })?;
    Ok(NonInnerCertificate {
        cert_version: CERT_VERSION,
        method: Method::Oracle,
        group: GroupInfo::of(g),
        class: s.class(),
        z2_type,
        assignment: None,
        images: phi.exponent_images(g),
        checks: compute_checks(g, &phi, None, OracleStatus::Ran(true)),
    })
}

/// Routes a group through the construction when eligible, otherwise through
/// the oracle; construction results are confirmed by the oracle when the
/// group is within its bound.
pub fn certify(g: &Group, config: &CertifyConfig) -> Result<NonInnerCertificate> {
    let pipeline = Pipeline::new(g, config.lattice_bound)?;
    if !pipeline.is_eligible() {
        return route_fallback(g, config);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cert = pipeline.find_noninner_order_p(&mut rng)?;
    if g.order() <= config.oracle_bound {
        let images: Vec<GroupElement> = cert
            .images
            .iter()
            .map(|e| g.from_exponents(e))
            .collect::<Result<_>>()?;
        let phi = Endo::from_images(g, images)?;
        cert.checks.oracle_confirmed = OracleStatus::Ran(oracle::confirms(g, &phi, config.oracle_bound)?);
    }
    Ok(cert)
}
