//! Two-sided ideals: generation, enumeration and primality.
//!
//! Everything here works on additive generating sets rather than on whole
//! element sets. An additive subgroup `H` is a two-sided ideal exactly when
//! `g·h` and `h·g` lie in `H` for every additive generator `g` of the ring
//! and every additive generator `h` of `H`, and `aRb ⊆ I` exactly when
//! `a·g·b ∈ I` for every additive generator `g` of the ring.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::ring::{AdditiveSpan, Elem, FiniteRing};
use crate::subset::ElementSubset;

/// Smallest two-sided ideal containing `gens`.
pub fn generated_ideal(ring: &FiniteRing, gens: impl IntoIterator<Item = Elem>) -> ElementSubset {
    let ring_gens = ring.additive_generators();
    let mut span = AdditiveSpan::new(ring);
    let mut pending: Vec<Elem> = Vec::new();
    for g in gens {
        if span.adjoin(g) {
            pending.push(g);
        }
    }
    while let Some(x) = pending.pop() {
        for &g in ring_gens {
            for y in [ring.mul(g, x), ring.mul(x, g)] {
                if span.adjoin(y) {
                    pending.push(y);
                }
            }
        }
    }
    span.into_subset()
}

/// `RaR`.
pub fn principal_ideal(ring: &FiniteRing, a: Elem) -> ElementSubset {
    generated_ideal(ring, [a])
}

/// Sorted generators of `ideal`, chosen greedily in index order.
pub fn ideal_generators(ring: &FiniteRing, ideal: &ElementSubset) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut cur = ring.zero_subset();
    for e in ideal.iter() {
        if !cur.contains(e) {
            gens.push(e);
            cur = generated_ideal(ring, gens.iter().copied());
        }
    }
    gens
}

pub fn is_ideal(ring: &FiniteRing, s: &ElementSubset) -> bool {
    if s.universe() != ring.size() || !s.contains(ring.zero()) {
        return false;
    }
    let mut span = AdditiveSpan::new(ring);
    let mut gens = Vec::new();
    for e in s.iter() {
        if span.adjoin(e) {
            gens.push(e);
        }
    }
    if span.members() != s {
        return false;
    }
    gens.iter().all(|&h| {
        ring.additive_generators()
            .iter()
            .all(|&g| s.contains(ring.mul(g, h)) && s.contains(ring.mul(h, g)))
    })
}

pub(crate) fn require_ideal(ring: &FiniteRing, s: &ElementSubset) -> Result<()> {
    ring.check_subset(s)?;
    if !is_ideal(ring, s) {
        return Err(Error::NotAnIdeal);
    }
    Ok(())
}

/// `I + J`.
pub fn ideal_sum(ring: &FiniteRing, a: &ElementSubset, b: &ElementSubset) -> ElementSubset {
    let mut span = AdditiveSpan::new(ring);
    for e in a.iter().chain(b.iter()) {
        span.adjoin(e);
    }
    span.into_subset()
}

/// Additive span of `{x·y : x ∈ a, y ∈ b}`; the ideal product when `a`, `b` are ideals.
pub fn ideal_product(ring: &FiniteRing, a: &ElementSubset, b: &ElementSubset) -> ElementSubset {
    let ga = ring.span_generators(a);
    let gb = ring.span_generators(b);
    ring.additive_span(ga.iter().flat_map(|&x| gb.iter().map(move |&y| ring.mul(x, y))))
}

/// One representative per additive coset of `ideal`, in index order.
pub fn coset_representatives(ring: &FiniteRing, ideal: &ElementSubset) -> Vec<Elem> {
    let members = ideal.to_vec();
    let mut marked = ring.empty_subset();
    let mut reps = Vec::new();
    for a in ring.elements() {
        if marked.contains(a) {
            continue;
        }
        reps.push(a);
        for &i in &members {
            marked.insert(ring.add(a, i));
        }
    }
    reps
}

/// Element-wise primality: for all `a, b ∉ I` some `x` has `a·x·b ∉ I`.
pub fn is_prime_ideal(ring: &FiniteRing, ideal: &ElementSubset) -> Result<bool> {
    require_ideal(ring, ideal)?;
    if ideal.is_full() {
        return Err(Error::NotProper);
    }
    Ok(prime_unchecked(ring, ideal))
}

fn prime_unchecked(ring: &FiniteRing, ideal: &ElementSubset) -> bool {
    let reps: Vec<Elem> = coset_representatives(ring, ideal)
        .into_iter()
        .filter(|&a| !ideal.contains(a))
        .collect();
    let gens = ring.additive_generators();
    reps.iter().all(|&a| {
        reps.iter()
            .all(|&b| gens.iter().any(|&g| !ideal.contains(ring.mul(ring.mul(a, g), b))))
    })
}

pub fn is_reduced(ring: &FiniteRing) -> bool {
    first_nonzero_square_zero(ring).is_none()
}

/// Smallest nonzero `a` with `a² = 0`, if any.
pub fn first_nonzero_square_zero(ring: &FiniteRing) -> Option<Elem> {
    ring.elements()
        .find(|&a| a != ring.zero() && ring.mul(a, a) == ring.zero())
}

/// `{x : x^k ∈ I for some 1 ≤ k ≤ |R|}`; a set, not necessarily an ideal.
pub fn sqrt_ideal(ring: &FiniteRing, ideal: &ElementSubset) -> Result<ElementSubset> {
    require_ideal(ring, ideal)?;
    Ok(ElementSubset::from_predicate(ring.size(), |x| {
        let mut p = x;
        for _ in 0..ring.size() {
            if ideal.contains(p) {
                return true;
            }
            p = ring.mul(p, x);
        }
        false
    }))
}

/// Every two-sided ideal of a ring, in ascending mask order, with inclusions.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    ideals: Vec<ElementSubset>,
    leq: Vec<Vec<bool>>,
    index: HashMap<ElementSubset, usize>,
    /// For each element `a`, the index of `RaR`.
    principal: Vec<usize>,
}

impl IdealLattice {
    pub fn ideals(&self) -> &[ElementSubset] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn get(&self, k: usize) -> &ElementSubset {
        &self.ideals[k]
    }

    pub fn index_of(&self, s: &ElementSubset) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `ideal(i) ⊆ ideal(j)`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn principal_index(&self, a: Elem) -> usize {
        self.principal[a]
    }

    pub fn principal(&self, a: Elem) -> &ElementSubset {
        &self.ideals[self.principal[a]]
    }

    pub fn zero_index(&self) -> usize {
        0
    }

    pub fn top_index(&self) -> usize {
        self.ideals.len() - 1
    }

    /// Maximal proper ideals.
    pub fn maximal(&self) -> Vec<usize> {
        let top = self.top_index();
        (0..top)
            .filter(|&i| (0..top).all(|j| j == i || !self.leq[i][j]))
            .collect()
    }
}

/// Enumerates all two-sided ideals as the sum-closure of the principal ideals.
pub fn all_ideals(ring: &FiniteRing, limits: &Limits) -> Result<IdealLattice> {
    let principals: Vec<ElementSubset> = ring
        .elements()
        .into_par_iter()
        .map(|a| principal_ideal(ring, a))
        .collect();

    let mut list: Vec<ElementSubset> = Vec::new();
    let mut index: HashMap<ElementSubset, usize> = HashMap::new();
    let mut insert = |s: ElementSubset, list: &mut Vec<ElementSubset>| -> Result<bool> {
        if index.contains_key(&s) {
            return Ok(false);
        }
        if list.len() >= limits.ideal_bound {
            return Err(Error::IdealCountExceeded {
                bound: limits.ideal_bound,
            });
        }
        index.insert(s.clone(), list.len());
        list.push(s);
        Ok(true)
    };
    insert(ring.zero_subset(), &mut list)?;
    for p in &principals {
        insert(p.clone(), &mut list)?;
    }
    let mut next = 1;
    while next < list.len() {
        for j in 1..next {
            let s = ideal_sum(ring, &list[next], &list[j]);
            insert(s, &mut list)?;
        }
        next += 1;
    }

    list.sort();
    let index: HashMap<ElementSubset, usize> = list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let principal = principals.iter().map(|p| index[p]).collect();
    let leq = list
        .iter()
        .map(|a| list.iter().map(|b| a.is_subset(b)).collect())
        .collect();
    Ok(IdealLattice {
        ideals: list,
        leq,
        index,
        principal,
    })
}

/// Prime ideals among the lattice members, by index.
pub(crate) fn prime_indices(ring: &FiniteRing, lattice: &IdealLattice) -> Vec<usize> {
    let top = lattice.top_index();
    (0..top)
        .into_par_iter()
        .filter(|&k| prime_unchecked(ring, lattice.get(k)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingBuilder;

    fn z(m: usize) -> FiniteRing {
        RingBuilder::default().zmod(m).unwrap()
    }

    #[test]
    fn generated_ideal_examples() {
        let z12 = z(12);
        assert_eq!(generated_ideal(&z12, [4]).to_vec(), vec![0, 4, 8]);
        assert_eq!(generated_ideal(&z12, []).to_vec(), vec![0]);
        let b = RingBuilder::default();
        let m = b.matrix(b.zmod(2).unwrap(), 2).unwrap();
        let e12 = m.parse_element("[[0,1],[0,0]]").unwrap();
        assert!(generated_ideal(&m, [e12]).is_full());
    }

    #[test]
    fn zmod12_lattice() {
        let r = z(12);
        let lat = all_ideals(&r, &Limits::default()).unwrap();
        let gens: Vec<Vec<Elem>> = lat.ideals().iter().map(|i| ideal_generators(&r, i)).collect();
        assert_eq!(gens, vec![vec![], vec![6], vec![4], vec![3], vec![2], vec![1]]);
        assert_eq!(lat.maximal().len(), 2);
        assert!(lat.leq(1, 3) && !lat.leq(2, 3));
    }

    #[test]
    fn field_has_two_ideals() {
        let r = z(2);
        assert_eq!(all_ideals(&r, &Limits::default()).unwrap().len(), 2);
    }

    #[test]
    fn ideal_bound_aborts() {
        let r = z(12);
        let limits = Limits {
            ideal_bound: 3,
            ..Limits::default()
        };
        assert!(matches!(
            all_ideals(&r, &limits),
            Err(Error::IdealCountExceeded { bound: 3 })
        ));
    }

    #[test]
    fn primality_examples() {
        let r = z(12);
        assert!(is_prime_ideal(&r, &r.subset_of(&[0, 2, 4, 6, 8, 10])).unwrap());
        assert!(!is_prime_ideal(&r, &r.subset_of(&[0, 4, 8])).unwrap());
        assert_eq!(is_prime_ideal(&r, &r.full_subset()), Err(Error::NotProper));
        assert_eq!(is_prime_ideal(&r, &r.subset_of(&[0, 5])), Err(Error::NotAnIdeal));
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&z(6)));
        assert!(is_reduced(&z(2)));
        assert!(!is_reduced(&z(8)));
        assert_eq!(first_nonzero_square_zero(&z(8)), Some(4));
        let b = RingBuilder::default();
        let m = b.matrix(b.zmod(2).unwrap(), 2).unwrap();
        assert!(!is_reduced(&m));
    }

    #[test]
    fn radical_sets() {
        let r = z(12);
        assert_eq!(
            sqrt_ideal(&r, &r.subset_of(&[0, 4, 8])).unwrap().to_vec(),
            vec![0, 2, 4, 6, 8, 10]
        );
        assert!(sqrt_ideal(&r, &r.full_subset()).unwrap().is_full());
        let z6 = z(6);
        assert_eq!(sqrt_ideal(&z6, &z6.zero_subset()).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn products_and_sums() {
        let r = z(12);
        let two = r.subset_of(&[0, 2, 4, 6, 8, 10]);
        let three = r.subset_of(&[0, 3, 6, 9]);
        assert_eq!(ideal_product(&r, &two, &two).to_vec(), vec![0, 4, 8]);
        assert_eq!(ideal_product(&r, &two, &three).to_vec(), vec![0, 6]);
        assert!(ideal_sum(&r, &two, &three).is_full());
        assert!(is_ideal(&r, &two));
        assert!(!is_ideal(&r, &r.subset_of(&[0, 2])));
    }

    #[test]
    fn coset_reps_count() {
        let r = z(12);
        assert_eq!(coset_representatives(&r, &r.subset_of(&[0, 4, 8])), vec![0, 1, 2, 3]);
    }
}
