//! Structural hypotheses of the order-`p` automorphism construction, and the
//! `analyze` report.

use serde::Serialize;

use crate::error::Result;
use crate::pcgroup::Group;

use super::ops::{abelian_invariants, center, centralizer, commutator_subgroup, frattini, min_generators, quotient_rank};
use super::series::{lower_central_series, upper_central_series, CentralSeries};
use super::thin::{is_maximal_class, is_thin, MaximalClass, ThinMethod, ThinnessReport};
use super::{Subgroup, SubgroupSummary};

/// Everything the construction and its case analysis look at, each field
/// computed independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    pub p_odd: bool,
    pub thin: bool,
    pub thin_method: ThinMethod,
    pub class: usize,
    pub class_at_least_4: bool,
    pub series_coincide: bool,
    /// `C_G(Phi(G)) = Z(Phi(G))`.
    pub strongly_frattinian: bool,
    pub d_g: u32,
    pub d_z: u32,
    pub d_z2_over_z: u32,
    /// `d(Z_2/Z) = d(G) d(Z)`, as an integer equality.
    pub d_condition: bool,
    pub z_cyclic_of_order_p: bool,
    pub z2_over_z_elementary_p2: bool,
    /// Abelian invariants of `Z_2(G)` as prime-power exponents, e.g. `[2, 1]`.
    pub z2_invariants: Vec<u32>,
    pub z2_type: String,
    /// `G/gamma_3(G)` has order `p^3` and exponent `p`.
    pub quotient_extraspecial_exponent_p: bool,
    pub z2_in_gamma3: bool,
    /// `[Z_2(G), gamma_2(G)] = 1`.
    pub z2_centralizes_gamma2: bool,
}

impl AssumptionReport {
    /// The full standing hypotheses: p odd, thin, class at least 4, strongly
    /// Frattinian and `d(Z_2/Z) = d(G) d(Z)`.
    pub fn fully_eligible(&self) -> bool {
        self.p_odd && self.thin && self.class_at_least_4 && self.strongly_frattinian && self.d_condition
    }

    /// What the derivation construction needs to run soundly.
    pub fn construction_eligible(&self) -> bool {
        self.p_odd
            && self.thin
            && self.class_at_least_4
            && self.d_g == 2
            && self.quotient_extraspecial_exponent_p
            && self.z2_in_gamma3
            && self.z2_centralizes_gamma2
    }

    /// Human-readable list of failed construction requirements.
    pub fn construction_failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.p_odd {
            out.push("p = 2");
        }
        if !self.thin {
            out.push("not thin");
        }
        if !self.class_at_least_4 {
            out.push("class below 4");
        }
        if self.d_g != 2 {
            out.push("not two-generator");
        }
        if !self.quotient_extraspecial_exponent_p {
            out.push("G/gamma_3 is not extraspecial of exponent p");
        }
        if !self.z2_in_gamma3 {
            out.push("Z_2 not contained in gamma_3");
        }
        if !self.z2_centralizes_gamma2 {
            out.push("[Z_2, gamma_2] is not trivial");
        }
        out
    }
}

pub fn z2_type_name(p: u32, invariants: &[u32]) -> String {
    if invariants.is_empty() {
        return "1".into();
    }
    invariants
        .iter()
        .map(|&e| if e == 1 { format!("C{p}") } else { format!("C{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Cached structural data reused across the automorphism construction.
#[derive(Debug, Clone)]
pub struct Structure {
    pub lower: CentralSeries,
    pub upper: CentralSeries,
    pub center: Subgroup,
    pub frattini: Subgroup,
}

impl Structure {
    pub fn compute(g: &Group) -> Result<Self> {
        Ok(Self {
            lower: lower_central_series(g)?,
            upper: upper_central_series(g)?,
            center: center(g),
            frattini: frattini(g),
        })
    }

    pub fn class(&self) -> usize {
        self.lower.class()
    }
}

/// Thinness verdict, exact when the lattice is within bound.
pub fn thinness(g: &Group, lattice_bound: usize) -> Result<ThinnessReport> {
    if g.order() <= lattice_bound {
        is_thin(g, ThinMethod::Exact, lattice_bound)
    } else {
        is_thin(g, ThinMethod::Coverty, lattice_bound)
    }
}

pub fn standing_assumptions(g: &Group, s: &Structure, lattice_bound: usize) -> Result<AssumptionReport> {
    let p = g.prime();
    let class = s.class();
    let thin = thinness(g, lattice_bound)?;
    let series_coincide = class == s.upper.class()
        && (0..=class).all(|i| s.lower.gamma(i + 1).same_elements(&s.upper.zeta(class - i)));

    let phi = &s.frattini;
    let z_phi = centralizer(g, phi)
        .elements()
        .iter()
        .copied()
        .filter(|&x| phi.contains(x))
        .collect::<Vec<_>>();
    let strongly_frattinian = centralizer(g, phi).elements() == z_phi.as_slice();

    let z = s.upper.zeta(1);
    let z2 = s.upper.zeta(2);
    let d_g = min_generators(g);
    let d_z = quotient_rank(g, &z, &Subgroup::trivial());
    let d_z2_over_z = quotient_rank(g, &z2, &z);
    let z2_invariants = abelian_invariants(g, &z2).unwrap_or_default();
    let z2_over_z_elementary_p2 = z2.order() == z.order() * (p * p) as usize && d_z2_over_z == 2;

    let gamma2 = s.lower.gamma(2);
    let gamma3 = s.lower.gamma(3);
    let quotient_extraspecial_exponent_p = g.order() / gamma3.order() == (p * p * p) as usize
        && gamma2.order() / gamma3.order() == p as usize
        && g.elements().all(|x| gamma3.contains(g.pow(x, p as i64)));
    let z2_centralizes_gamma2 = commutator_subgroup(g, &z2, &gamma2).is_trivial();

    Ok(AssumptionReport {
        p_odd: p % 2 == 1,
        thin: thin.is_thin,
        thin_method: thin.method,
        class,
        class_at_least_4: class >= 4,
        series_coincide,
        strongly_frattinian,
        d_g,
        d_z,
        d_z2_over_z,
        d_condition: d_z2_over_z == d_g * d_z,
        z_cyclic_of_order_p: z.order() == p as usize,
        z2_over_z_elementary_p2,
        z2_type: z2_type_name(p, &z2_invariants),
        z2_invariants,
        quotient_extraspecial_exponent_p,
        z2_in_gamma3: z2.is_subgroup_of(&gamma3),
        z2_centralizes_gamma2,
    })
}

/// Result of `analyze`.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub name: String,
    pub prime: u32,
    pub order: usize,
    pub class: usize,
    pub lower_central_orders: Vec<usize>,
    pub upper_central_orders: Vec<usize>,
    pub center: SubgroupSummary,
    pub frattini: SubgroupSummary,
    pub min_generators: u32,
    pub thin_exact: Option<ThinnessReport>,
    pub thin_coverty: ThinnessReport,
    pub maximal_class: MaximalClass,
    pub standing_assumptions: AssumptionReport,
    pub construction_eligible: bool,
    pub fully_eligible: bool,
}

pub fn analyze(g: &Group, lattice_bound: usize) -> Result<StructureReport> {
    let s = Structure::compute(g)?;
    let assumptions = standing_assumptions(g, &s, lattice_bound)?;
    let thin_exact = if g.order() <= lattice_bound {
        Some(is_thin(g, ThinMethod::Exact, lattice_bound)?)
    } else {
        None
    };
    Ok(StructureReport {
        name: g.name().to_string(),
        prime: g.prime(),
        order: g.order(),
        class: s.class(),
        lower_central_orders: s.lower.orders(),
        upper_central_orders: s.upper.orders(),
        center: s.center.summary(g),
        frattini: s.frattini.summary(g),
        min_generators: min_generators(g),
        thin_exact,
        thin_coverty: is_thin(g, ThinMethod::Coverty, lattice_bound)?,
        maximal_class: is_maximal_class(g)?,
        construction_eligible: assumptions.construction_eligible(),
        fully_eligible: assumptions.fully_eligible(),
        standing_assumptions: assumptions,
    })
}

