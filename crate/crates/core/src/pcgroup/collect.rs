//! Collection from the left for refined pc presentations.

use crate::error::{Error, Result};

use super::presentation::{PcPresentation, Word};

/// Rewrite-step budget for one collection call.
pub const COLLECT_BUDGET: u64 = 1_000_000;

/// Normal word as a sparse list of `(generator, exponent)` with exponents in `[1, p-1]`.
type NormalWord = Vec<(usize, u32)>;

/// Precomputed relation data driving the collector.
#[derive(Debug, Clone)]
pub struct Collector {
    p: u32,
    n: usize,
    /// Tail of `a_i^p`.
    power: Vec<NormalWord>,
    /// `conj[j][i]` is the normal word of `a_j^{a_i} = a_j [a_j, a_i]`, for `j > i`.
    conj: Vec<Vec<NormalWord>>,
    /// Normal form of `a_i^-1`.
    inverse: Vec<Vec<u32>>,
}

fn to_normal(w: &Word) -> NormalWord {
    w.factors().iter().map(|&(g, e)| (g, e as u32)).collect()
}

impl Collector {
    /// Builds a collector; the presentation must already be structurally valid.
    pub fn new(pres: &PcPresentation) -> Result<Self> {
        let n = pres.ngens();
        let p = pres.prime();
        let power = (0..n).map(|i| to_normal(&pres.power(i))).collect();
        let conj = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        if j > i {
                            let mut w = vec![(j, 1)];
                            w.extend(to_normal(&pres.commutator(j, i)));
                            w
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut c = Self {
            p,
            n,
            power,
            conj,
            inverse: vec![Vec::new(); n],
        };
        // a_i^-1 = a_i^(p-1) * (a_i^p)^-1; the tail only involves higher generators.
        for i in (0..n).rev() {
            let mut e = vec![0u32; n];
            e[i] = p - 1;
            let mut budget = COLLECT_BUDGET;
            let tail = c.power[i].clone();
            for &(k, x) in tail.iter().rev() {
                for _ in 0..x {
                    let inv = c.inverse[k].clone();
                    c.mul_exponents(&mut e, &inv, &mut budget)?;
                }
            }
            c.inverse[i] = e;
        }
        Ok(c)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    /// Multiplies the normal form `e` on the right by the generator `a_i`.
    pub fn mul_gen(&self, e: &mut [u32], i: usize, budget: &mut u64) -> Result<()> {
        if *budget == 0 {
            return Err(Error::Internal("collection exceeded its rewrite budget".into()));
        }
        *budget -= 1;
        let mut tail = [0u32; 32];
        let mut moved = false;
        for j in i + 1..self.n {
            tail[j] = e[j];
            moved |= e[j] != 0;
            e[j] = 0;
        }
        e[i] += 1;
        if e[i] == self.p {
            e[i] = 0;
            // Everything above i is zero here, so the power tail is already collected.
            for &(k, x) in &self.power[i] {
                e[k] = x;
            }
        }
        if moved {
            for j in i + 1..self.n {
                for _ in 0..tail[j] {
                    self.mul_normal(e, &self.conj[j][i], budget)?;
                }
            }
        }
        Ok(())
    }

    fn mul_normal(&self, e: &mut [u32], w: &[(usize, u32)], budget: &mut u64) -> Result<()> {
        for &(k, x) in w {
            for _ in 0..x {
                self.mul_gen(e, k, budget)?;
            }
        }
        Ok(())
    }

    /// Multiplies `e` on the right by the element with exponent vector `f`.
    pub fn mul_exponents(&self, e: &mut [u32], f: &[u32], budget: &mut u64) -> Result<()> {
        for (k, &x) in f.iter().enumerate() {
            for _ in 0..x {
                self.mul_gen(e, k, budget)?;
            }
        }
        Ok(())
    }

    /// Multiplies `e` on the right by `a_i^x` for any integer `x`.
    pub fn mul_gen_power(&self, e: &mut [u32], i: usize, x: i64, budget: &mut u64) -> Result<()> {
        if x >= 0 {
            for _ in 0..x {
                self.mul_gen(e, i, budget)?;
            }
        } else {
            for _ in 0..x.unsigned_abs() {
                self.mul_exponents(e, &self.inverse[i], budget)?;
            }
        }
        Ok(())
    }

    /// Collects an arbitrary word to its normal form.
    pub fn collect(&self, w: &Word) -> Result<Vec<u32>> {
        let mut e = vec![0u32; self.n];
        let mut budget = COLLECT_BUDGET;
        for &(g, x) in w.factors() {
            if g >= self.n {
                return Err(Error::GeneratorRange {
                    index: g + 1,
                    ngens: self.n,
                });
            }
            self.mul_gen_power(&mut e, g, x, &mut budget)?;
        }
        Ok(e)
    }

    /// Product of two normal forms.
    pub fn multiply(&self, a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
        let mut e = a.to_vec();
        let mut budget = COLLECT_BUDGET;
        self.mul_exponents(&mut e, b, &mut budget)?;
        Ok(e)
    }

    /// Inverse of a normal form, as the reversed product of generator inverses.
    pub fn inverse(&self, a: &[u32]) -> Result<Vec<u32>> {
        let mut e = vec![0u32; self.n];
        let mut budget = COLLECT_BUDGET;
        for (k, &x) in a.iter().enumerate().rev() {
            for _ in 0..x {
                self.mul_exponents(&mut e, &self.inverse[k], &mut budget)?;
            }
        }
        Ok(e)
    }

    pub fn generator_inverse(&self, i: usize) -> &[u32] {
        &self.inverse[i]
    }

    pub fn power_tail(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.n];
        for &(k, x) in &self.power[i] {
            e[k] = x;
        }
        e
    }

    pub fn conjugate_word(&self, j: usize, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.n];
        for &(k, x) in &self.conj[j][i] {
            e[k] = x;
        }
        e
    }
}

/// A failing overlap: the two bracketings collect to different normal forms.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OverlapFailure {
    pub overlap: String,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

/// Outcome of [`check_consistency`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ConsistencyReport {
    pub checked: usize,
    pub failures: Vec<OverlapFailure>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates the overlap conditions of a refined pc presentation:
///
/// * `(a_k a_j) a_i = a_k (a_j a_i)` for `k > j > i`
/// * `(a_j^(p-1) a_j) a_i = a_j^(p-1) (a_j a_i)` for `j > i`
/// * `(a_j a_i^(p-1)) a_i = a_j (a_i^(p-1) a_i)` for `j > i`
/// * `(a_i^(p-1) a_i) a_i = a_i (a_i^(p-1) a_i)`
///
/// Both sides are collected independently; the presentation must be
/// structurally valid.
pub fn check_consistency(pres: &PcPresentation) -> Result<ConsistencyReport> {
    pres.validate()?;
    let c = Collector::new(pres)?;
    let n = c.ngens();
    let p = c.prime();
    let unit = |i: usize| {
        let mut e = vec![0u32; n];
        e[i] = 1;
        e
    };
    let powered = |i: usize, x: u32| {
        let mut e = vec![0u32; n];
        e[i] = x;
        e
    };
    let mut report = ConsistencyReport {
        checked: 0,
        failures: Vec::new(),
    };
    let mut record = |label: String, left: Vec<u32>, right: Vec<u32>| {
        report.checked += 1;
        if left != right {
            report.failures.push(OverlapFailure {
                overlap: label,
                left,
                right,
            });
        }
    };
    let mul = |a: &[u32], b: &[u32]| c.multiply(a, b);

    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let left = mul(&mul(&unit(k), &unit(j))?, &unit(i))?;
                let right = mul(&unit(k), &mul(&unit(j), &unit(i))?)?;
                record(format!("(a{} a{}) a{}", k + 1, j + 1, i + 1), left, right);
            }
        }
    }
    for j in 0..n {
        for i in 0..j {
            // a_j^p a_i, once with the power relation applied first.
            let left = mul(&c.power_tail(j), &unit(i))?;
            let right = mul(&powered(j, p - 1), &mul(&unit(j), &unit(i))?)?;
            record(format!("a{}^{} a{}", j + 1, p, i + 1), left, right);

            // a_j a_i^p.
            let left = mul(&mul(&unit(j), &powered(i, p - 1))?, &unit(i))?;
            let right = mul(&unit(j), &c.power_tail(i))?;
            record(format!("a{} a{}^{}", j + 1, i + 1, p), left, right);
        }
    }
    for i in 0..n {
        let left = mul(&c.power_tail(i), &unit(i))?;
        let right = mul(&unit(i), &c.power_tail(i))?;
        record(format!("a{}^{}", i + 1, p + 1), left, right);
    }
    Ok(report)
}
