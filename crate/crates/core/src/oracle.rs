//! Definitional brute force for small rings.
//!
//! Everything here is computed straight from the definitions, sharing no code
//! with the enumeration engine: ideals come from a scan of all subsets,
//! primality from the `aRb ⊆ P` test over every element, and `P_A`,
//! annihilators and the classifiers from direct sweeps. Only rings of at most
//! [`Limits::subset_scan_max`] elements (hard ceiling 24) are accepted.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::analysis::RingAnalysis;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::report::{VerificationReport, Witness};
use crate::ring::{Elem, FiniteRing};
use crate::subset::ElementSubset;

pub const ORACLE_CHECK_ID: &str = "ideal-oracle";

const SCAN_CEILING: usize = 24;

/// Brute-force model of a small ring's ideal theory.
pub struct OracleRing<'r> {
    ring: &'r FiniteRing,
    ideals: Vec<u32>,
    primes: Vec<u32>,
    minimal_primes: Vec<u32>,
}

fn to_subset(n: usize, mask: u32) -> ElementSubset {
    ElementSubset::from_predicate(n, |e| mask >> e & 1 == 1)
}

fn to_mask(s: &ElementSubset) -> u32 {
    s.iter().fold(0, |m, e| m | 1 << e)
}

fn is_sub(a: u32, b: u32) -> bool {
    a & !b == 0
}

impl<'r> OracleRing<'r> {
    pub fn new(ring: &'r FiniteRing, limits: &Limits) -> Result<Self> {
        let n = ring.size();
        let max = limits.subset_scan_max.min(SCAN_CEILING);
        if n > max {
            return Err(Error::BudgetExceeded {
                what: "subset scan".into(),
                needed: 1u128 << n.min(127),
                budget: 1u128 << max,
            });
        }
        let full: u32 = (1u32 << n) - 1;
        let zero_bit = 1u32 << ring.zero();
        let others: Vec<Elem> = ring.elements().filter(|&e| e != ring.zero()).collect();
        let mut ideals: Vec<u32> = (0u32..1 << others.len())
            .into_par_iter()
            .filter_map(|bits| {
                let mask = others
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| bits >> i & 1 == 1)
                    .fold(zero_bit, |m, (_, &e)| m | 1 << e);
                is_ideal_mask(ring, mask).then_some(mask)
            })
            .collect();
        ideals.sort_unstable();
        let primes: Vec<u32> = ideals
            .iter()
            .copied()
            .filter(|&p| p != full && is_prime_mask(ring, p))
            .collect();
        let minimal_primes = primes
            .iter()
            .copied()
            .filter(|&p| !primes.iter().any(|&q| q != p && is_sub(q, p)))
            .collect();
        Ok(OracleRing {
            ring,
            ideals,
            primes,
            minimal_primes,
        })
    }

    fn full(&self) -> u32 {
        (1u32 << self.ring.size()) - 1
    }

    fn sub(&self, m: u32) -> ElementSubset {
        to_subset(self.ring.size(), m)
    }

    pub fn ideals(&self) -> Vec<ElementSubset> {
        self.ideals.iter().map(|&m| self.sub(m)).collect()
    }

    pub fn primes(&self) -> Vec<ElementSubset> {
        self.primes.iter().map(|&m| self.sub(m)).collect()
    }

    pub fn minimal_primes(&self) -> Vec<ElementSubset> {
        self.minimal_primes.iter().map(|&m| self.sub(m)).collect()
    }

    /// Intersection of the minimal primes containing `set`; `R` when none does.
    pub fn p_of(&self, set: &ElementSubset) -> ElementSubset {
        let a = to_mask(set);
        let m = self
            .minimal_primes
            .iter()
            .filter(|&&p| is_sub(a, p))
            .fold(self.full(), |acc, &p| acc & p);
        self.sub(m)
    }

    pub fn prime_radical(&self) -> ElementSubset {
        self.p_of(&self.ring.zero_subset())
    }

    pub fn left_ann(&self, set: &ElementSubset) -> ElementSubset {
        let r = self.ring;
        ElementSubset::from_predicate(r.size(), |x| set.iter().all(|s| r.mul(x, s) == r.zero()))
    }

    pub fn right_ann(&self, set: &ElementSubset) -> ElementSubset {
        let r = self.ring;
        ElementSubset::from_predicate(r.size(), |x| set.iter().all(|s| r.mul(s, x) == r.zero()))
    }

    /// Smallest scanned ideal containing `set`.
    pub fn generated(&self, set: &ElementSubset) -> ElementSubset {
        let a = to_mask(set);
        let m = self
            .ideals
            .iter()
            .copied()
            .filter(|&i| is_sub(a, i))
            .fold(self.full(), |acc, i| acc & i);
        self.sub(m)
    }

    pub fn is_z0(&self, ideal: &ElementSubset) -> bool {
        ideal.iter().all(|a| {
            let single = ElementSubset::from_elements(self.ring.size(), [a]);
            self.p_of(&single).is_subset(ideal)
        })
    }

    /// `P_F ⊆ I` for every `F ⊆ I` with `1 ≤ |F| ≤ n`, by direct enumeration of the subsets.
    pub fn is_zn0(&self, ideal: &ElementSubset, n: usize) -> bool {
        let members = ideal.to_vec();
        let mut seen = BTreeSet::new();
        let mut stack: Vec<(usize, Vec<Elem>)> = vec![(0, Vec::new())];
        while let Some((start, f)) = stack.pop() {
            if !f.is_empty() {
                let set = ElementSubset::from_elements(self.ring.size(), f.iter().copied());
                if seen.insert(to_mask(&set)) && !self.p_of(&set).is_subset(ideal) {
                    return false;
                }
            }
            if f.len() < n {
                for (k, &m) in members.iter().enumerate().skip(start) {
                    let mut g = f.clone();
                    g.push(m);
                    stack.push((k + 1, g));
                }
            }
        }
        true
    }

    pub fn is_right_d(&self, ideal: &ElementSubset) -> bool {
        ideal.iter().all(|a| {
            let single = ElementSubset::from_elements(self.ring.size(), [a]);
            let rar = self.generated(&single);
            self.right_ann(&self.left_ann(&rar)).is_subset(ideal)
        })
    }
}

fn is_ideal_mask(r: &FiniteRing, mask: u32) -> bool {
    let members: Vec<Elem> = (0..r.size()).filter(|&e| mask >> e & 1 == 1).collect();
    let has = |e: Elem| mask >> e & 1 == 1;
    members.iter().all(|&a| {
        members.iter().all(|&b| has(r.add(a, b))) && r.elements().all(|x| has(r.mul(x, a)) && has(r.mul(a, x)))
    })
}

fn is_prime_mask(r: &FiniteRing, p: u32) -> bool {
    let out = |e: Elem| p >> e & 1 == 0;
    r.elements().filter(|&a| out(a)).all(|a| {
        r.elements()
            .filter(|&b| out(b))
            .all(|b| r.elements().any(|x| out(r.mul(r.mul(a, x), b))))
    })
}

/// Compares the enumeration engine against the definitional brute force.
///
/// Covers the ideal list, primes, minimal primes, `P_a` for every element,
/// one-sided annihilators of every ideal, and the z°, z_2°, and right d-ideal
/// verdicts of every ideal.
pub fn verify_ideal_oracle(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let limits = analysis.limits();
    let mut report = VerificationReport::new(ring.spec(), ORACLE_CHECK_ID);
    let small = ring.size() <= limits.subset_scan_max.min(SCAN_CEILING);
    if !report.hypothesis(format!("|R| ≤ {}", limits.subset_scan_max.min(SCAN_CEILING)), small) {
        return report.conclude(false);
    }
    let oracle = match OracleRing::new(ring, limits) {
        Ok(o) => o,
        Err(e) => return report.budget_exceeded(e.to_string()),
    };
    let mut ok = true;
    let mut mismatch = |report: &mut VerificationReport, what: &str, w: Option<Witness>| {
        ok = false;
        report.note(format!("mismatch: {what}"));
        if let Some(w) = w {
            report.witness(w);
        }
    };

    let scanned = oracle.ideals();
    if scanned.as_slice() != analysis.lattice().ideals() {
        mismatch(&mut report, "ideal list", None);
    }
    let engine_primes: Vec<ElementSubset> = analysis
        .spectrum()
        .primes
        .iter()
        .map(|&k| analysis.ideal(k).clone())
        .collect();
    if engine_primes != oracle.primes() {
        mismatch(&mut report, "prime list", None);
    }
    let engine_min: Vec<ElementSubset> = analysis.minimal_primes().cloned().collect();
    if engine_min != oracle.minimal_primes() {
        mismatch(&mut report, "minimal primes", None);
    }
    if let Some(a) = ring
        .elements()
        .find(|&a| oracle.p_of(&ElementSubset::from_elements(ring.size(), [a])) != *analysis.p_of_element(a))
    {
        mismatch(&mut report, "P_a", Some(Witness::element(ring, "a", a)));
    }
    for (k, ideal) in scanned.iter().enumerate().take(analysis.ideal_count()) {
        let w = || Some(Witness::ideal(ring, "ideal", ideal));
        if oracle.left_ann(ideal) != *analysis.ideal(analysis.left_ann_index(k)) {
            mismatch(&mut report, "l(I)", w());
        }
        if oracle.right_ann(ideal) != *analysis.ideal(analysis.right_ann_index(k)) {
            mismatch(&mut report, "r(I)", w());
        }
        if oracle.is_z0(ideal) != crate::classify::is_z0_index(analysis, k) {
            mismatch(&mut report, "z° verdict", w());
        }
        if oracle.is_right_d(ideal) != crate::classify::is_d_index(analysis, k) {
            mismatch(&mut report, "right d-ideal verdict", w());
        }
        match crate::classify::is_zn0_ideal(analysis, ideal, 2) {
            Ok(v) if v == oracle.is_zn0(ideal, 2) => {}
            Ok(_) => mismatch(&mut report, "z_2° verdict", w()),
            Err(e) => return report.budget_exceeded(e.to_string()),
        }
    }
    report.note(format!(
        "{} ideals, {} primes, {} minimal primes by subset scan",
        scanned.len(),
        oracle.primes.len(),
        oracle.minimal_primes.len()
    ));
    report.conclude(ok)
}
