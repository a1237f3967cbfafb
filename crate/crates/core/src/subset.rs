//! Fixed-length membership masks over ring element indices.
//!
//! Every ideal, annihilator and prime in this crate is an [`ElementSubset`].
//! Subsets compare in ascending mask order, reading element `i` as bit `i`
//! of a binary number, so the zero ideal `{0}` sorts first and the whole
//! ring sorts last among ideals.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSubset {
    len: usize,
    words: Vec<u64>,
}

impl ElementSubset {
    pub fn empty(len: usize) -> Self {
        ElementSubset {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(len: usize, elems: I) -> Self {
        let mut s = Self::empty(len);
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn from_predicate(len: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(len);
        for e in 0..len {
            if pred(e) {
                s.insert(e);
            }
        }
        s
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Number of ring elements the mask ranges over.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        debug_assert!(e < self.len);
        self.words[e >> 6] >> (e & 63) & 1 == 1
    }

    /// Inserts `e`, returning true if it was not present.
    #[inline]
    pub fn insert(&mut self, e: usize) -> bool {
        assert!(e < self.len, "element {e} out of range {}", self.len);
        let w = &mut self.words[e >> 6];
        let bit = 1u64 << (e & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, e: usize) {
        self.words[e >> 6] &= !(1u64 << (e & 63));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSubset {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        ElementSubset {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn complement(&self) -> Self {
        let mut s = ElementSubset {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.trim();
        s
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Hex rendering of the mask with element `i` as bit `i` (most significant digit first).
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u8;
            for b in 0..4 {
                let e = d * 4 + b;
                if e < self.len && self.contains(e) {
                    nibble |= 1 << b;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(len: usize, hex: &str) -> Option<Self> {
        let mut s = Self::empty(len);
        for (d, ch) in hex.chars().rev().enumerate() {
            let nibble = ch.to_digit(16)?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let e = d * 4 + b;
                    if e >= len {
                        return None;
                    }
                    s.insert(e);
                }
            }
        }
        Some(s)
    }
}

impl Ord for ElementSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words).rev() {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for ElementSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_empty() {
        let f = ElementSubset::full(70);
        assert_eq!(f.count(), 70);
        assert!(f.is_full());
        assert!(ElementSubset::empty(70).is_empty());
        assert_eq!(f.complement(), ElementSubset::empty(70));
    }

    #[test]
    fn hex_of_zmod12_ideal() {
        let s = ElementSubset::from_elements(12, [0, 4, 8]);
        assert_eq!(s.to_hex(), "111");
    }

    #[test]
    fn mask_order_puts_zero_first() {
        let zero = ElementSubset::from_elements(12, [0]);
        let six = ElementSubset::from_elements(12, [0, 6]);
        let four = ElementSubset::from_elements(12, [0, 4, 8]);
        assert!(zero < six && six < four);
        assert!(four < ElementSubset::full(12));
    }

    proptest! {
        #[test]
        fn hex_roundtrip(len in 1usize..200, seed in proptest::collection::vec(any::<usize>(), 0..40)) {
            let s = ElementSubset::from_elements(len, seed.iter().map(|x| x % len));
            prop_assert_eq!(ElementSubset::from_hex(len, &s.to_hex()), Some(s.clone()));
            prop_assert_eq!(s.to_vec().len(), s.count());
        }

        #[test]
        fn set_algebra(len in 1usize..150, a in proptest::collection::vec(any::<usize>(), 0..30), b in proptest::collection::vec(any::<usize>(), 0..30)) {
            let x = ElementSubset::from_elements(len, a.iter().map(|v| v % len));
            let y = ElementSubset::from_elements(len, b.iter().map(|v| v % len));
            let i = x.intersection(&y);
            let u = x.union(&y);
            prop_assert!(i.is_subset(&x) && i.is_subset(&y));
            prop_assert!(x.is_subset(&u) && y.is_subset(&u));
            prop_assert_eq!(i.count() + u.count(), x.count() + y.count());
            prop_assert!(x <= u);
        }
    }
}
