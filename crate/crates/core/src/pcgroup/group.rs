use std::fmt;

use crate::error::{Error, Result};

use super::collect::{check_consistency, Collector, ConsistencyReport};
use super::presentation::{PcPresentation, Word};

/// Largest group order for which the element table is built (`5^7`).
pub const DEFAULT_ORDER_BOUND: u64 = 78_125;

/// Largest group order for which the full multiplication table is memoized (`3^6`).
pub const DEFAULT_MEMO_BOUND: u64 = 729;

/// An element of a [`Group`], identified by its normal form.
///
/// The index is the exponent vector read as a base-`p` number with `a1`
/// most significant, so index order is lexicographic order on normal forms
/// and index 0 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GroupElement(u32);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite p-group given by a consistent refined pc presentation.
///
/// Immutable after construction; inverse and (for small orders)
/// multiplication tables are built eagerly.
#[derive(Debug, Clone)]
pub struct Group {
    presentation: PcPresentation,
    collector: Collector,
    order: usize,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl Group {
    pub fn new(presentation: PcPresentation) -> Result<Self> {
        Self::with_bounds(presentation, DEFAULT_ORDER_BOUND, DEFAULT_MEMO_BOUND)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(PcPresentation::parse(text)?)
    }

    /// Builds a group, rejecting inconsistent presentations and orders above `order_bound`.
    pub fn with_bounds(presentation: PcPresentation, order_bound: u64, memo_bound: u64) -> Result<Self> {
        presentation.validate()?;
        let order = (presentation.prime() as u64)
            .checked_pow(presentation.ngens() as u32)
            .unwrap_or(u64::MAX);
        if order > order_bound || order > u32::MAX as u64 {
            return Err(Error::OrderBound {
                order,
                bound: order_bound,
            });
        }
        let report = check_consistency(&presentation)?;
        if let Some(first) = report.failures.first() {
            return Err(Error::Inconsistent {
                failures: report.failures.len(),
                first: format!("{}: {:?} vs {:?}", first.overlap, first.left, first.right),
            });
        }
        let collector = Collector::new(&presentation)?;
        let order = order as usize;
        let mut group = Self {
            presentation,
            collector,
            order,
            inverses: Vec::new(),
            table: None,
        };
        let inverses = (0..order)
            .map(|i| {
                let e = group.decode(GroupElement(i as u32));
                group.collector.inverse(&e).map(|v| group.encode(&v).0)
            })
            .collect::<Result<Vec<_>>>()?;
        group.inverses = inverses;
        if order as u64 <= memo_bound {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                let ea = group.decode(GroupElement(a as u32));
                for b in 0..order {
                    let eb = group.decode(GroupElement(b as u32));
                    table[a * order + b] = group.encode(&group.collector.multiply(&ea, &eb)?).0;
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.presentation
    }

    pub fn name(&self) -> &str {
        self.presentation.name()
    }

    pub fn prime(&self) -> u32 {
        self.presentation.prime()
    }

    pub fn ngens(&self) -> usize {
        self.presentation.ngens()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn collector(&self) -> &Collector {
        &self.collector
    }

    /// All elements in lexicographic order of their normal forms.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = GroupElement> + Clone {
        (0..self.order as u32).map(GroupElement)
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index < self.order {
            Ok(GroupElement(index as u32))
        } else {
            Err(Error::ForeignElement {
                index,
                order: self.order,
            })
        }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    /// The pc generator `a_{i+1}`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = vec![0u32; self.ngens()];
        e[i] = 1;
        self.encode(&e)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    pub fn exponents(&self, g: GroupElement) -> Vec<u32> {
        self.decode(g)
    }

    pub fn from_exponents(&self, e: &[u32]) -> Result<GroupElement> {
        let p = self.prime();
        if e.len() != self.ngens() || e.iter().any(|&x| x >= p) {
            return Err(Error::Internal(format!(
                "exponent vector {e:?} is not a normal form for {} generators mod {p}",
                self.ngens()
            )));
        }
        Ok(self.encode(e))
    }

    fn decode(&self, g: GroupElement) -> Vec<u32> {
        let p = self.prime();
        let n = self.ngens();
        let mut e = vec![0u32; n];
        let mut x = g.0;
        for k in (0..n).rev() {
            e[k] = x % p;
            x /= p;
        }
        e
    }

    fn encode(&self, e: &[u32]) -> GroupElement {
        let p = self.prime();
        GroupElement(e.iter().fold(0u32, |acc, &x| acc * p + x))
    }

    pub fn check(&self, g: GroupElement) -> Result<GroupElement> {
        self.element(g.index())
    }

    /// Collects a word in the pc generators.
    pub fn collect(&self, w: &Word) -> Result<GroupElement> {
        Ok(self.encode(&self.collector.collect(w)?))
    }

    /// The normal form of `g` as a word.
    pub fn word_of(&self, g: GroupElement) -> Word {
        Word::new(
            self.decode(g)
                .into_iter()
                .enumerate()
                .filter(|&(_, x)| x > 0)
                .map(|(k, x)| (k, x as i64))
                .collect(),
        )
    }

    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        match &self.table {
            Some(t) => GroupElement(t[a.index() * self.order + b.index()]),
            None => {
                let prod = self
                    .collector
                    .multiply(&self.decode(a), &self.decode(b))
                    .expect("collection of a consistent presentation terminates");
                self.encode(&prod)
            }
        }
    }

    /// Checked multiplication: rejects elements that do not belong to this group.
    pub fn try_mul(&self, a: GroupElement, b: GroupElement) -> Result<GroupElement> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.inverses[a.index()])
    }

    /// `a^-1 b^-1 a b`.
    pub fn comm(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `a^b = b^-1 a b`.
    pub fn conj(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        self.mul(self.inv(b), self.mul(a, b))
    }

    /// `a^k` by square-and-multiply, `k` reduced modulo the group order.
    pub fn pow(&self, a: GroupElement, k: i64) -> GroupElement {
        let mut k = k.rem_euclid(self.order as i64) as u64;
        let mut base = a;
        let mut acc = GroupElement::IDENTITY;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: GroupElement) -> usize {
        let mut x = a;
        let mut k = 1;
        while !x.is_identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Left-normed commutator `[g1, g2, ..., gk]`.
    pub fn left_normed(&self, gs: &[GroupElement]) -> GroupElement {
        let mut it = gs.iter();
        let mut acc = it.next().copied().unwrap_or_default();
        for &g in it {
            acc = self.comm(acc, g);
        }
        acc
    }

    pub fn product(&self, gs: impl IntoIterator<Item = GroupElement>) -> GroupElement {
        gs.into_iter().fold(GroupElement::IDENTITY, |acc, g| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Renders an element as a word, e.g. `a1 a3^2`.
    pub fn display(&self, g: GroupElement) -> String {
        self.word_of(g).to_string()
    }

    pub fn consistency_report(&self) -> Result<ConsistencyReport> {
        check_consistency(&self.presentation)
    }
}
