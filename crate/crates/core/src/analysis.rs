//! Per-ring cache of the ideal lattice, prime spectrum and annihilators.
//!
//! Almost every check needs the same data: all ideals, the minimal primes,
//! `P_a` for every element and `l`, `r`, `r∘l` for every ideal. Building it
//! once keeps the checks themselves to simple sweeps.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::annihilator::{left_ann, right_ann};
use crate::error::{Error, Result};
use crate::ideal::{all_ideals, prime_indices, IdealLattice};
use crate::limits::Limits;
use crate::report::{VerificationReport, Witness};
use crate::ring::{Elem, FiniteRing};
use crate::subset::ElementSubset;

/// Minimal primes are tracked as bits of a `u64` signature.
pub const MAX_MINIMAL_PRIMES: usize = 64;

/// Primes and minimal primes, as indices into an [`IdealLattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSpectrum {
    pub primes: Vec<usize>,
    pub minimal_primes: Vec<usize>,
}

#[derive(Debug)]
pub struct RingAnalysis {
    ring: Arc<FiniteRing>,
    limits: Limits,
    lattice: IdealLattice,
    spectrum: PrimeSpectrum,
    /// Bit `k` set when element lies in minimal prime `k`.
    signature: Vec<u64>,
    p_cache: HashMap<u64, ElementSubset>,
    radical: ElementSubset,
    left: Vec<usize>,
    right: Vec<usize>,
    closure: Vec<usize>,
}

impl RingAnalysis {
    pub fn new(ring: impl Into<Arc<FiniteRing>>, limits: &Limits) -> Result<Self> {
        let ring = ring.into();
        let lattice = all_ideals(&ring, limits)?;
        let primes = prime_indices(&ring, &lattice);
        let minimal_primes: Vec<usize> = primes
            .iter()
            .copied()
            .filter(|&p| !primes.iter().any(|&q| q != p && lattice.leq(q, p)))
            .collect();
        if minimal_primes.len() > MAX_MINIMAL_PRIMES {
            return Err(Error::BudgetExceeded {
                what: "minimal primes".into(),
                needed: minimal_primes.len() as u128,
                budget: MAX_MINIMAL_PRIMES as u128,
            });
        }
        let signature: Vec<u64> = ring
            .elements()
            .map(|a| {
                minimal_primes
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| lattice.get(p).contains(a))
                    .fold(0u64, |acc, (k, _)| acc | (1 << k))
            })
            .collect();

        let ideals = lattice.ideals();
        let anns: Vec<(usize, usize)> = ideals
            .par_iter()
            .map(|i| {
                let l = lattice
                    .index_of(&left_ann(&ring, i))
                    .expect("left annihilator of an ideal is an ideal");
                let r = lattice
                    .index_of(&right_ann(&ring, i))
                    .expect("right annihilator of an ideal is an ideal");
                (l, r)
            })
            .collect();
        let left: Vec<usize> = anns.iter().map(|p| p.0).collect();
        let right: Vec<usize> = anns.iter().map(|p| p.1).collect();
        let closure = left.iter().map(|&l| right[l]).collect();

        let mut analysis = RingAnalysis {
            ring,
            limits: limits.clone(),
            lattice,
            spectrum: PrimeSpectrum { primes, minimal_primes },
            signature,
            p_cache: HashMap::new(),
            radical: ElementSubset::empty(0),
            left,
            right,
            closure,
        };
        let mut p_cache = HashMap::new();
        for &sig in &analysis.signature {
            p_cache.entry(sig).or_insert_with(|| analysis.p_of_mask(sig));
        }
        analysis.radical = analysis.p_of_mask(analysis.all_mask());
        analysis.p_cache = p_cache;
        Ok(analysis)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.lattice
    }

    pub fn spectrum(&self) -> &PrimeSpectrum {
        &self.spectrum
    }

    pub fn ideal(&self, k: usize) -> &ElementSubset {
        self.lattice.get(k)
    }

    pub fn ideal_count(&self) -> usize {
        self.lattice.len()
    }

    pub fn index_of(&self, s: &ElementSubset) -> Option<usize> {
        self.lattice.index_of(s)
    }

    /// Lattice index of `s`, or [`Error::NotAnIdeal`].
    pub fn require_ideal(&self, s: &ElementSubset) -> Result<usize> {
        self.ring.check_subset(s)?;
        self.index_of(s).ok_or(Error::NotAnIdeal)
    }

    pub fn minimal_primes(&self) -> impl Iterator<Item = &ElementSubset> + '_ {
        self.spectrum.minimal_primes.iter().map(|&k| self.lattice.get(k))
    }

    pub fn is_prime_index(&self, k: usize) -> bool {
        self.spectrum.primes.binary_search(&k).is_ok()
    }

    pub fn signature(&self, a: Elem) -> u64 {
        self.signature[a]
    }

    fn all_mask(&self) -> u64 {
        let k = self.spectrum.minimal_primes.len();
        if k == 64 {
            u64::MAX
        } else {
            (1u64 << k) - 1
        }
    }

    /// Intersection of the minimal primes flagged in `mask`; `R` for an empty mask.
    pub fn p_of_mask(&self, mask: u64) -> ElementSubset {
        if let Some(p) = self.p_cache.get(&mask) {
            return p.clone();
        }
        let mut out = self.ring.full_subset();
        for (k, &p) in self.spectrum.minimal_primes.iter().enumerate() {
            if mask & (1 << k) != 0 {
                out.intersect_with(self.lattice.get(p));
            }
        }
        out
    }

    /// Signature of a set: minimal primes containing every member.
    pub fn set_signature(&self, elems: impl IntoIterator<Item = Elem>) -> u64 {
        elems.into_iter().fold(self.all_mask(), |m, a| m & self.signature[a])
    }

    /// `P_a`.
    pub fn p_of_element(&self, a: Elem) -> &ElementSubset {
        &self.p_cache[&self.signature[a]]
    }

    /// `P_A`: intersection of the minimal primes containing `A`, or `R` if there are none.
    pub fn p_of(&self, elems: impl IntoIterator<Item = Elem>) -> ElementSubset {
        self.p_of_mask(self.set_signature(elems))
    }

    /// `P(R)`, the intersection of all minimal primes.
    pub fn prime_radical(&self) -> &ElementSubset {
        &self.radical
    }

    pub fn is_semiprime(&self) -> bool {
        self.radical.count() == 1
    }

    /// Definitional semiprimeness: the only ideal with zero square is zero.
    pub fn is_semiprime_by_nilpotent_ideals(&self) -> bool {
        self.first_square_zero_ideal().is_none()
    }

    /// Smallest nonzero ideal `I` with `I² = 0`, by lattice index.
    pub fn first_square_zero_ideal(&self) -> Option<usize> {
        (1..self.ideal_count()).find(|&k| {
            let i = self.ideal(k);
            let gens = self.ring.span_generators(i);
            gens.iter()
                .all(|&x| gens.iter().all(|&y| self.ring.mul(x, y) == self.ring.zero()))
        })
    }

    pub fn is_reduced(&self) -> bool {
        crate::ideal::is_reduced(&self.ring)
    }

    /// Index of `l(I)` for the ideal at index `k`.
    pub fn left_ann_index(&self, k: usize) -> usize {
        self.left[k]
    }

    /// Index of `r(I)` for the ideal at index `k`.
    pub fn right_ann_index(&self, k: usize) -> usize {
        self.right[k]
    }

    /// Index of `I_A = r(l(I))` for the ideal at index `k`.
    pub fn closure_index(&self, k: usize) -> usize {
        self.closure[k]
    }

    pub fn is_annihilator_index(&self, k: usize) -> bool {
        self.closure[k] == k
    }

    /// Indices of the right annihilator ideals, ascending.
    pub fn annihilator_indices(&self) -> Vec<usize> {
        (0..self.ideal_count())
            .filter(|&k| self.is_annihilator_index(k))
            .collect()
    }

    pub fn principal_index(&self, a: Elem) -> usize {
        self.lattice.principal_index(a)
    }

    /// `r(l(RaR))`.
    pub fn principal_closure(&self, a: Elem) -> &ElementSubset {
        self.ideal(self.principal_closure_index(a))
    }

    pub fn principal_closure_index(&self, a: Elem) -> usize {
        self.closure[self.lattice.principal_index(a)]
    }

    /// `l(RaR)`.
    pub fn principal_left_ann(&self, a: Elem) -> &ElementSubset {
        self.ideal(self.left[self.lattice.principal_index(a)])
    }

    /// Index of `I ∩ J` (always an ideal).
    pub fn meet_index(&self, i: usize, j: usize) -> usize {
        let m = self.ideal(i).intersection(self.ideal(j));
        self.index_of(&m).expect("intersection of ideals is an ideal")
    }

    /// Index of `I + J`.
    pub fn sum_index(&self, i: usize, j: usize) -> usize {
        if self.lattice.leq(i, j) {
            return j;
        }
        if self.lattice.leq(j, i) {
            return i;
        }
        let s = crate::ideal::ideal_sum(&self.ring, self.ideal(i), self.ideal(j));
        self.index_of(&s).expect("sum of ideals is an ideal")
    }

    /// Index of the ideal product `IJ`.
    pub fn product_index(&self, i: usize, j: usize) -> usize {
        let p = crate::ideal::ideal_product(&self.ring, self.ideal(i), self.ideal(j));
        self.index_of(&p).expect("product of ideals is an ideal")
    }

    pub fn is_maximal_index(&self, k: usize) -> bool {
        let top = self.lattice.top_index();
        k != top && (0..top).all(|j| j == k || !self.lattice.leq(k, j))
    }
}

pub const SPECTRUM_CHECK_ID: &str = "prime-spectrum";

/// Consistency of the prime spectrum and the semiprime tests.
///
/// `P(R)` lies in every minimal prime and equals the intersection of all
/// primes; the element-wise primality test agrees with the ideal-wise one
/// (`AB ⊆ P ⇒ A ⊆ P or B ⊆ P`); `P_A` is antitone in `A`; `I ⊆ √I`; and
/// semiprimeness via `P(R) = 0` agrees with the nilpotent-ideal definition
/// and with `l(IJ) = l(I ∩ J)` for all ideal pairs.
pub fn verify_prime_spectrum(analysis: &RingAnalysis) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), SPECTRUM_CHECK_ID);
    let n = analysis.ideal_count();
    let mut ok = true;
    let radical = analysis.prime_radical();
    if let Some(p) = analysis.minimal_primes().find(|p| !radical.is_subset(p)) {
        ok = false;
        report.note("P(R) is not inside a minimal prime");
        report.witness(Witness::ideal(ring, "minimal-prime", p));
    }
    let mut all = ring.full_subset();
    for &p in &analysis.spectrum().primes {
        all.intersect_with(analysis.ideal(p));
    }
    if &all != radical {
        ok = false;
        report.note("P(R) differs from the intersection of all primes");
    }

    let products: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| analysis.product_index(i, j)).collect())
        .collect();
    let lat = analysis.lattice();
    for p in 0..lat.top_index() {
        let ideal_wise = (0..n).all(|i| (0..n).all(|j| !lat.leq(products[i][j], p) || lat.leq(i, p) || lat.leq(j, p)));
        if ideal_wise != analysis.is_prime_index(p) {
            ok = false;
            report.note("element-wise and ideal-wise primality disagree");
            report.witness(Witness::ideal(ring, "ideal", analysis.ideal(p)));
        }
    }

    let mut sigs: Vec<u64> = ring.elements().map(|a| analysis.signature(a)).collect();
    sigs.sort_unstable();
    sigs.dedup();
    'outer: for &s in &sigs {
        for &t in &sigs {
            if !analysis.p_of_mask(s).is_subset(&analysis.p_of_mask(s & t)) {
                ok = false;
                report.note("P_A is not antitone in A");
                break 'outer;
            }
        }
    }

    for k in 0..n {
        let root = crate::ideal::sqrt_ideal(ring, analysis.ideal(k))?;
        if !analysis.ideal(k).is_subset(&root) {
            ok = false;
            report.note("I is not inside its radical");
            report.witness(Witness::ideal(ring, "ideal", analysis.ideal(k)));
        }
    }

    let by_radical = analysis.is_semiprime();
    let by_nilpotent = analysis.is_semiprime_by_nilpotent_ideals();
    let by_annihilators = (0..n).all(|i| {
        (i..n).all(|j| analysis.left_ann_index(products[i][j]) == analysis.left_ann_index(analysis.meet_index(i, j)))
    });
    report.note(format!(
        "semiprime via P(R) = 0: {by_radical}, via nilpotent ideals: {by_nilpotent}, via l(IJ) = l(I∩J): {by_annihilators}"
    ));
    if by_radical != by_nilpotent || by_radical != by_annihilators {
        ok = false;
        if let Some(k) = analysis.first_square_zero_ideal() {
            report.witness(Witness::ideal(ring, "square-zero-ideal", analysis.ideal(k)));
        }
    }
    report.note(format!(
        "{} ideals, {} primes, {} minimal primes",
        n,
        analysis.spectrum().primes.len(),
        analysis.spectrum().minimal_primes.len()
    ));
    Ok(report.conclude(ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_generators;
    use crate::ring::RingBuilder;

    fn analyze(spec: &str) -> RingAnalysis {
        let r = RingBuilder::default().parse(spec).unwrap();
        RingAnalysis::new(r, &Limits::default()).unwrap()
    }

    fn gens(a: &RingAnalysis, s: &ElementSubset) -> Vec<Elem> {
        ideal_generators(a.ring(), s)
    }

    #[test]
    fn zmod12_spectrum() {
        let a = analyze("Z12");
        let mins: Vec<Vec<Elem>> = a.minimal_primes().map(|p| gens(&a, p)).collect();
        assert_eq!(mins, vec![vec![3], vec![2]]);
        assert_eq!(a.prime_radical().to_vec(), vec![0, 6]);
        assert_eq!(gens(&a, a.p_of_element(4)), vec![2]);
        assert!(a.p_of([3, 4]).is_full());
        assert!(!a.is_semiprime());
        assert!(!a.is_semiprime_by_nilpotent_ideals());
    }

    #[test]
    fn zmod8_and_zmod6() {
        let a = analyze("Z8");
        assert_eq!(a.spectrum().minimal_primes.len(), 1);
        assert_eq!(gens(&a, a.minimal_primes().next().unwrap()), vec![2]);
        let b = analyze("Z6");
        assert_eq!(b.spectrum().minimal_primes.len(), 2);
        assert!(b.is_semiprime() && b.is_semiprime_by_nilpotent_ideals());
    }

    #[test]
    fn matrix_over_field_is_semiprime() {
        let a = analyze("M2(Z2)");
        assert_eq!(a.ideal_count(), 2);
        assert!(a.is_semiprime());
        assert!(!a.is_reduced());
    }

    #[test]
    fn spectrum_check_passes() {
        for spec in ["Z2", "Z12", "Z2xZ4", "M2(Z2)", "T2(Z2)", "GT(4,2,2)"] {
            let a = analyze(spec);
            let r = verify_prime_spectrum(&a).unwrap();
            assert_eq!(r.verdict, crate::report::Verdict::Pass, "{spec}: {:?}", r.notes);
        }
    }

    #[test]
    fn annihilator_tables_zmod12() {
        let a = analyze("Z12");
        let four = a.index_of(&a.ring().subset_of(&[0, 4, 8])).unwrap();
        assert_eq!(gens(&a, a.ideal(a.left_ann_index(four))), vec![3]);
        assert_eq!(a.closure_index(four), four);
        assert_eq!(a.annihilator_indices().len(), 6);
    }
}
