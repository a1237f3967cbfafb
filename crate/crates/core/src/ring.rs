//! Finite unital rings stored as dense Cayley tables.
//!
//! Elements are indices `0..size`. Structured constructors (ℤ_m, products,
//! full and upper triangular matrix rings, 2×2 generalized triangular rings)
//! record a [`Structure`] tag so elements can be printed and parsed in
//! human-readable notation and so the extension-ring routines can decode
//! matrix entries.
//!
//! Index encodings:
//! - `A × B`: `(i, j) ↦ i·|B| + j`.
//! - `M_n(R)`, `T_n(R)`: the stored entries (all n² for `M_n`, the on/above
//!   diagonal ones for `T_n`) in row-major order, read as base-|R| digits with
//!   the first entry least significant.
//! - `GT(s, r, m)`: the digits `(s, m, r)` with radices `(s_mod, m_mod, r_mod)`,
//!   first digit least significant. `GT(k, k, k)` therefore shares indices
//!   with `T_2(ℤ_k)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::{Limits, HARD_SIZE_CAP};
use crate::subset::ElementSubset;

pub type Elem = usize;

#[derive(Debug, Clone)]
pub enum Structure {
    /// Tables supplied directly, no notation beyond raw indices.
    Table,
    Modular {
        m: usize,
    },
    Product(Arc<FiniteRing>, Arc<FiniteRing>),
    Matrix {
        base: Arc<FiniteRing>,
        n: usize,
    },
    UpperTriangular {
        base: Arc<FiniteRing>,
        n: usize,
    },
    /// `[[S, M], [0, R]]` with `S = ℤ_s_mod`, `R = ℤ_r_mod`, `M = ℤ_m_mod`.
    GeneralizedTriangular {
        s_mod: usize,
        r_mod: usize,
        m_mod: usize,
    },
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Table => write!(f, "table"),
            Structure::Modular { m } => write!(f, "Z{m}"),
            Structure::Product(a, b) => write!(f, "{}x{}", a.structure, b.structure),
            Structure::Matrix { base, n } => write!(f, "M{n}({})", base.structure),
            Structure::UpperTriangular { base, n } => write!(f, "T{n}({})", base.structure),
            Structure::GeneralizedTriangular { s_mod, r_mod, m_mod } => {
                write!(f, "GT({s_mod},{r_mod},{m_mod})")
            }
        }
    }
}

/// A finite ring given by addition and multiplication tables.
///
/// Immutable after construction; all methods are reads.
pub struct FiniteRing {
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    zero: Elem,
    one: Elem,
    structure: Structure,
    additive_gens: OnceLock<Vec<Elem>>,
}

impl Clone for FiniteRing {
    fn clone(&self) -> Self {
        FiniteRing {
            size: self.size,
            add: self.add.clone(),
            mul: self.mul.clone(),
            neg: self.neg.clone(),
            zero: self.zero,
            one: self.one,
            structure: self.structure.clone(),
            additive_gens: OnceLock::new(),
        }
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("structure", &self.structure.to_string())
            .field("size", &self.size)
            .finish()
    }
}

impl FiniteRing {
    /// Builds a ring from raw tables without checking the axioms.
    ///
    /// Tables are row-major `size × size`. Run [`crate::axioms::validate_ring`]
    /// to check the result.
    pub fn from_tables(
        add: Vec<Vec<Elem>>,
        mul: Vec<Vec<Elem>>,
        neg: Vec<Elem>,
        zero: Elem,
        one: Elem,
    ) -> Result<Self> {
        let size = neg.len();
        if size == 0 || size > HARD_SIZE_CAP {
            return Err(Error::InvalidArgument(format!("table size {size} out of range")));
        }
        let flat = |t: Vec<Vec<Elem>>, name: &str| -> Result<Vec<u16>> {
            if t.len() != size || t.iter().any(|row| row.len() != size) {
                return Err(Error::InvalidArgument(format!("{name} table is not {size}x{size}")));
            }
            let mut out = Vec::with_capacity(size * size);
            for row in t {
                for v in row {
                    if v >= size {
                        return Err(Error::InvalidArgument(format!("{name} table entry {v} out of range")));
                    }
                    out.push(v as u16);
                }
            }
            Ok(out)
        };
        let add = flat(add, "add")?;
        let mul = flat(mul, "mul")?;
        if neg.iter().any(|&v| v >= size) || zero >= size || one >= size {
            return Err(Error::InvalidArgument("neg/zero/one out of range".into()));
        }
        Ok(FiniteRing {
            size,
            add,
            mul,
            neg: neg.into_iter().map(|v| v as u16).collect(),
            zero,
            one,
            structure: Structure::Table,
            additive_gens: OnceLock::new(),
        })
    }

    fn from_flat(
        size: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        neg: Vec<u16>,
        zero: Elem,
        one: Elem,
        structure: Structure,
    ) -> Self {
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        FiniteRing {
            size,
            add,
            mul,
            neg,
            zero,
            one,
            structure,
            additive_gens: OnceLock::new(),
        }
    }

    /// Copy of this ring with one multiplication cell overwritten.
    ///
    /// Used for fault injection; the result keeps the structure tag but is
    /// in general not a ring.
    pub fn with_mul_entry(&self, a: Elem, b: Elem, value: Elem) -> Self {
        let mut r = self.clone();
        r.mul[a * self.size + b] = value as u16;
        r
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Canonical ring-spec text, e.g. `M2(Z8)`.
    pub fn spec(&self) -> String {
        self.structure.to_string()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.size + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.size + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn is_idempotent(&self, e: Elem) -> bool {
        self.mul(e, e) == e
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (a + 1..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn empty_subset(&self) -> ElementSubset {
        ElementSubset::empty(self.size)
    }

    pub fn zero_subset(&self) -> ElementSubset {
        ElementSubset::from_elements(self.size, [self.zero])
    }

    pub fn full_subset(&self) -> ElementSubset {
        ElementSubset::full(self.size)
    }

    pub fn subset_of(&self, elems: &[Elem]) -> ElementSubset {
        ElementSubset::from_elements(self.size, elems.iter().copied())
    }

    pub fn check_subset(&self, s: &ElementSubset) -> Result<()> {
        if s.universe() != self.size {
            return Err(Error::LengthMismatch {
                expected: self.size,
                got: s.universe(),
            });
        }
        Ok(())
    }

    /// A generating set of the additive group, chosen greedily in index order.
    pub fn additive_generators(&self) -> &[Elem] {
        self.additive_gens.get_or_init(|| {
            let mut span = AdditiveSpan::new(self);
            let mut gens = Vec::new();
            for e in 0..self.size {
                if span.adjoin(e) {
                    gens.push(e);
                }
                if span.len() == self.size {
                    break;
                }
            }
            gens
        })
    }

    /// Additive subgroup generated by `elems`.
    pub fn additive_span(&self, elems: impl IntoIterator<Item = Elem>) -> ElementSubset {
        let mut span = AdditiveSpan::new(self);
        for e in elems {
            span.adjoin(e);
        }
        span.into_subset()
    }

    /// A generating set of the additive subgroup spanned by the members of `s`.
    pub fn span_generators(&self, s: &ElementSubset) -> Vec<Elem> {
        let mut span = AdditiveSpan::new(self);
        let mut gens = Vec::new();
        for e in s.iter() {
            if span.adjoin(e) {
                gens.push(e);
            }
        }
        gens
    }

    // ---- notation ----

    /// Human-readable notation for an element.
    pub fn format_element(&self, e: Elem) -> String {
        match &self.structure {
            Structure::Table => format!("#{e}"),
            Structure::Modular { .. } => e.to_string(),
            Structure::Product(a, b) => {
                let (i, j) = (e / b.size, e % b.size);
                format!("({},{})", a.format_element(i), b.format_element(j))
            }
            Structure::Matrix { base, n } => {
                let entries = decode_digits(e, base.size, n * n);
                format_matrix(*n, |i, j| base.format_element(entries[i * n + j]))
            }
            Structure::UpperTriangular { base, n } => {
                let entries = decode_digits(e, base.size, n * (n + 1) / 2);
                format_matrix(*n, |i, j| {
                    if j < i {
                        base.format_element(base.zero)
                    } else {
                        base.format_element(entries[upper_pos(*n, i, j)])
                    }
                })
            }
            Structure::GeneralizedTriangular { s_mod, r_mod, m_mod } => {
                let (s, m, r) = gt_decode(e, *s_mod, *m_mod, *r_mod);
                format!("[[{s},{m}],[0,{r}]]")
            }
        }
    }

    /// Parses element notation; `#k` addresses index `k` in any ring.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        if let Some(idx) = t.strip_prefix('#') {
            let k: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::parse(text, 1, "expected an element index"))?;
            if k >= self.size {
                return Err(Error::parse(text, 1, format!("index {k} out of range")));
            }
            return Ok(k);
        }
        match &self.structure {
            Structure::Table => Err(Error::parse(text, 0, "table rings only accept #index elements")),
            Structure::Modular { m } => {
                let v: i64 = t.parse().map_err(|_| Error::parse(text, 0, "expected an integer"))?;
                Ok(v.rem_euclid(*m as i64) as Elem)
            }
            Structure::Product(a, b) => {
                let inner = strip_delims(t, '(', ')').ok_or_else(|| Error::parse(text, 0, "expected (a,b)"))?;
                let parts = split_top_level(inner, ',');
                if parts.len() != 2 {
                    return Err(Error::parse(text, 0, "expected exactly two components"));
                }
                let i = a.parse_element(parts[0])?;
                let j = b.parse_element(parts[1])?;
                Ok(i * b.size + j)
            }
            Structure::Matrix { base, n } => {
                let rows = parse_matrix(text, *n, |s| base.parse_element(s))?;
                let digits: Vec<Elem> = rows.into_iter().flatten().collect();
                Ok(encode_digits(&digits, base.size))
            }
            Structure::UpperTriangular { base, n } => {
                let rows = parse_matrix(text, *n, |s| base.parse_element(s))?;
                let mut digits = Vec::with_capacity(n * (n + 1) / 2);
                for (i, row) in rows.iter().enumerate() {
                    for (j, &v) in row.iter().enumerate() {
                        if j < i {
                            if v != base.zero {
                                return Err(Error::parse(text, 0, "entries below the diagonal must be zero"));
                            }
                        } else {
                            digits.push(v);
                        }
                    }
                }
                Ok(encode_digits(&digits, base.size))
            }
            Structure::GeneralizedTriangular { s_mod, r_mod, m_mod } => {
                let rows = parse_matrix(text, 2, |s| {
                    s.trim()
                        .parse::<i64>()
                        .map(|v| v as Elem)
                        .map_err(|_| Error::parse(text, 0, "expected integer entries"))
                })?;
                if rows[1][0] != 0 {
                    return Err(Error::parse(text, 0, "lower-left entry must be zero"));
                }
                let red = |v: Elem, m: usize| (v as i64).rem_euclid(m as i64) as usize;
                Ok(gt_encode(
                    red(rows[0][0], *s_mod),
                    red(rows[0][1], *m_mod),
                    red(rows[1][1], *r_mod),
                    *s_mod,
                    *m_mod,
                ))
            }
        }
    }

    /// Entries of a matrix-shaped element (`M_n`, `T_n` or `GT` as 2×2), row-major n×n.
    ///
    /// For `GT`, entries are integers modulo their own component moduli.
    pub fn matrix_entries(&self, e: Elem) -> Option<Vec<Vec<Elem>>> {
        match &self.structure {
            Structure::Matrix { base, n } => {
                let d = decode_digits(e, base.size, n * n);
                Some((0..*n).map(|i| d[i * n..(i + 1) * n].to_vec()).collect())
            }
            Structure::UpperTriangular { base, n } => {
                let d = decode_digits(e, base.size, n * (n + 1) / 2);
                Some(
                    (0..*n)
                        .map(|i| {
                            (0..*n)
                                .map(|j| if j < i { base.zero } else { d[upper_pos(*n, i, j)] })
                                .collect()
                        })
                        .collect(),
                )
            }
            Structure::GeneralizedTriangular { s_mod, r_mod, m_mod } => {
                let (s, m, r) = gt_decode(e, *s_mod, *m_mod, *r_mod);
                Some(vec![vec![s, m], vec![0, r]])
            }
            _ => None,
        }
    }
}

/// Incrementally grown additive subgroup.
pub(crate) struct AdditiveSpan<'r> {
    ring: &'r FiniteRing,
    members: ElementSubset,
    list: Vec<Elem>,
}

impl<'r> AdditiveSpan<'r> {
    pub(crate) fn new(ring: &'r FiniteRing) -> Self {
        let mut members = ring.empty_subset();
        members.insert(ring.zero);
        AdditiveSpan {
            ring,
            members,
            list: vec![ring.zero],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.list.len()
    }

    /// Extends the subgroup by `x`; returns true if it grew.
    ///
    /// Terminates on arbitrary tables: the multiples of `x` are walked at
    /// most `size` times.
    pub(crate) fn adjoin(&mut self, x: Elem) -> bool {
        if self.members.contains(x) {
            return false;
        }
        let base_len = self.list.len();
        let mut cur = x;
        let mut steps = 0;
        while !self.members.contains(cur) && steps < self.ring.size {
            for k in 0..base_len {
                let v = self.ring.add(self.list[k], cur);
                if self.members.insert(v) {
                    self.list.push(v);
                }
            }
            cur = self.ring.add(cur, x);
            steps += 1;
        }
        true
    }

    pub(crate) fn members(&self) -> &ElementSubset {
        &self.members
    }

    pub(crate) fn into_subset(self) -> ElementSubset {
        self.members
    }
}

// ---- digit encodings ----

pub(crate) fn decode_digits(mut e: usize, radix: usize, count: usize) -> Vec<Elem> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(e % radix);
        e /= radix;
    }
    out
}

pub(crate) fn encode_digits(digits: &[Elem], radix: usize) -> Elem {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

/// Position of entry (i, j), j ≥ i, among the stored entries of `T_n`.
///
/// Row i starts after rows 0..i, which hold n, n-1, ..., n-i+1 entries.
pub(crate) fn upper_pos(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(j >= i);
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

pub(crate) fn gt_decode(e: Elem, s_mod: usize, m_mod: usize, r_mod: usize) -> (usize, usize, usize) {
    let s = e % s_mod;
    let m = (e / s_mod) % m_mod;
    let r = e / (s_mod * m_mod);
    debug_assert!(r < r_mod);
    (s, m, r)
}

pub(crate) fn gt_encode(s: usize, m: usize, r: usize, s_mod: usize, m_mod: usize) -> Elem {
    s + s_mod * (m + m_mod * r)
}

fn format_matrix(n: usize, entry: impl Fn(usize, usize) -> String) -> String {
    let rows: Vec<String> = (0..n)
        .map(|i| {
            let cells: Vec<String> = (0..n).map(|j| entry(i, j)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn parse_matrix<T>(text: &str, n: usize, mut cell: impl FnMut(&str) -> Result<T>) -> Result<Vec<Vec<T>>> {
    let outer = strip_delims(text.trim(), '[', ']').ok_or_else(|| Error::parse(text, 0, "expected [[..],..]"))?;
    let rows = split_top_level(outer, ',');
    if rows.len() != n {
        return Err(Error::parse(text, 0, format!("expected {n} rows")));
    }
    let mut out = Vec::with_capacity(n);
    for row in rows {
        let inner =
            strip_delims(row.trim(), '[', ']').ok_or_else(|| Error::parse(text, 0, "expected a bracketed row"))?;
        let cells = split_top_level(inner, ',');
        if cells.len() != n {
            return Err(Error::parse(text, 0, format!("expected {n} entries per row")));
        }
        out.push(cells.into_iter().map(&mut cell).collect::<Result<Vec<T>>>()?);
    }
    Ok(out)
}

pub(crate) fn strip_delims(t: &str, open: char, close: char) -> Option<&str> {
    let t = t.trim();
    if t.starts_with(open) && t.ends_with(close) && t.len() >= 2 {
        Some(&t[open.len_utf8()..t.len() - close.len_utf8()])
    } else {
        None
    }
}

/// Splits on `sep` outside any (), [], {} or <> nesting.
pub fn split_top_level(t: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' | '[' | '{' | '<' => depth += 1,
            ')' | ']' | '}' | '>' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&t[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&t[start..]);
    out
}

// ---- constructors ----

/// Builds the structured rings, refusing anything beyond the size cap.
#[derive(Debug, Clone)]
pub struct RingBuilder {
    cap: usize,
}

impl Default for RingBuilder {
    fn default() -> Self {
        RingBuilder::new(&Limits::default())
    }
}

impl RingBuilder {
    pub fn new(limits: &Limits) -> Self {
        RingBuilder {
            cap: limits.size_cap.min(HARD_SIZE_CAP),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn admit(&self, requested: u128) -> Result<usize> {
        if requested > self.cap as u128 {
            return Err(Error::SizeLimit {
                requested,
                cap: self.cap,
            });
        }
        Ok(requested as usize)
    }

    pub fn zmod(&self, m: usize) -> Result<FiniteRing> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("Z{m}: modulus must be at least 2")));
        }
        let size = self.admit(m as u128)?;
        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = ((a + b) % m) as u16;
                mul[a * size + b] = ((a * b) % m) as u16;
            }
        }
        let neg = (0..size).map(|a| ((m - a) % m) as u16).collect();
        Ok(FiniteRing::from_flat(
            size,
            add,
            mul,
            neg,
            0,
            1,
            Structure::Modular { m },
        ))
    }

    pub fn product(&self, a: impl Into<Arc<FiniteRing>>, b: impl Into<Arc<FiniteRing>>) -> Result<FiniteRing> {
        let (a, b) = (a.into(), b.into());
        let size = self.admit(a.size as u128 * b.size as u128)?;
        let bs = b.size;
        let split = |e: usize| (e / bs, e % bs);
        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for x in 0..size {
            let (xa, xb) = split(x);
            for y in 0..size {
                let (ya, yb) = split(y);
                add[x * size + y] = (a.add(xa, ya) * bs + b.add(xb, yb)) as u16;
                mul[x * size + y] = (a.mul(xa, ya) * bs + b.mul(xb, yb)) as u16;
            }
        }
        let neg = (0..size)
            .map(|x| {
                let (xa, xb) = split(x);
                (a.neg(xa) * bs + b.neg(xb)) as u16
            })
            .collect();
        let zero = a.zero * bs + b.zero;
        let one = a.one * bs + b.one;
        Ok(FiniteRing::from_flat(
            size,
            add,
            mul,
            neg,
            zero,
            one,
            Structure::Product(a, b),
        ))
    }

    pub fn matrix(&self, base: impl Into<Arc<FiniteRing>>, n: usize) -> Result<FiniteRing> {
        let base = base.into();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be at least 1".into()));
        }
        let digits = n * n;
        let size = self.admit(checked_pow(base.size, digits))?;
        let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let ring = build_matrix_like(&base, size, &positions, n, |i, j| Some(i * n + j));
        Ok(ring.with_structure(Structure::Matrix { base, n }))
    }

    pub fn upper_triangular(&self, base: impl Into<Arc<FiniteRing>>, n: usize) -> Result<FiniteRing> {
        let base = base.into();
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be at least 1".into()));
        }
        let digits = n * (n + 1) / 2;
        let size = self.admit(checked_pow(base.size, digits))?;
        let positions: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let ring = build_matrix_like(&base, size, &positions, n, |i, j| {
            if j >= i {
                Some(upper_pos(n, i, j))
            } else {
                None
            }
        });
        Ok(ring.with_structure(Structure::UpperTriangular { base, n }))
    }

    pub fn generalized_triangular(&self, s_mod: usize, r_mod: usize, m_mod: usize) -> Result<FiniteRing> {
        if s_mod < 2 || r_mod < 2 || m_mod < 1 {
            return Err(Error::InvalidArgument(format!(
                "GT({s_mod},{r_mod},{m_mod}): moduli must be at least 2 (1 for the bimodule)"
            )));
        }
        if !s_mod.is_multiple_of(m_mod) || !r_mod.is_multiple_of(m_mod) {
            return Err(Error::BimoduleIncompatible { s_mod, r_mod, m_mod });
        }
        let size = self.admit(s_mod as u128 * r_mod as u128 * m_mod as u128)?;
        let dec = |e| gt_decode(e, s_mod, m_mod, r_mod);
        let enc = |s, m, r| gt_encode(s, m, r, s_mod, m_mod) as u16;
        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        for x in 0..size {
            let (s1, m1, r1) = dec(x);
            for y in 0..size {
                let (s2, m2, r2) = dec(y);
                add[x * size + y] = enc((s1 + s2) % s_mod, (m1 + m2) % m_mod, (r1 + r2) % r_mod);
                let m = (s1 % m_mod * m2 + m1 * (r2 % m_mod)) % m_mod;
                mul[x * size + y] = enc(s1 * s2 % s_mod, m, r1 * r2 % r_mod);
            }
        }
        let neg = (0..size)
            .map(|x| {
                let (s, m, r) = dec(x);
                enc((s_mod - s) % s_mod, (m_mod - m) % m_mod, (r_mod - r) % r_mod)
            })
            .collect();
        let one = gt_encode(1, 0, 1, s_mod, m_mod);
        Ok(FiniteRing::from_flat(
            size,
            add,
            mul,
            neg,
            0,
            one,
            Structure::GeneralizedTriangular { s_mod, r_mod, m_mod },
        ))
    }

    /// Parses and builds a ring spec such as `Z12`, `M2(Z8)`, `T2(Z6)`, `Z2xZ4`, `GT(6,6,6)`.
    pub fn parse(&self, spec: &str) -> Result<FiniteRing> {
        crate::spec::parse_ring_spec(spec)?.build(self)
    }
}

impl FiniteRing {
    fn with_structure(mut self, structure: Structure) -> Self {
        self.structure = structure;
        self
    }
}

fn checked_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Shared table builder for `M_n` and `T_n`; `slot(i, j)` maps a matrix
/// position to its stored digit, or `None` for a structural zero.
fn build_matrix_like(
    base: &FiniteRing,
    size: usize,
    positions: &[(usize, usize)],
    n: usize,
    slot: impl Fn(usize, usize) -> Option<usize> + Sync,
) -> FiniteRing {
    let digits = positions.len();
    let b = base.size;
    let decoded: Vec<Vec<Elem>> = (0..size).map(|e| decode_digits(e, b, digits)).collect();
    let encode = |d: &[Elem]| encode_digits(d, b) as u16;

    let mut add = vec![0u16; size * size];
    let mut mul = vec![0u16; size * size];
    add.par_chunks_mut(size)
        .zip(mul.par_chunks_mut(size))
        .enumerate()
        .for_each(|(x, (add_row, mul_row))| {
            let dx = &decoded[x];
            let mut buf = vec![0; digits];
            for y in 0..size {
                let dy = &decoded[y];
                for k in 0..digits {
                    buf[k] = base.add(dx[k], dy[k]);
                }
                add_row[y] = encode(&buf);
                for (k, &(i, j)) in positions.iter().enumerate() {
                    let mut acc = base.zero;
                    for l in 0..n {
                        if let (Some(p), Some(q)) = (slot(i, l), slot(l, j)) {
                            acc = base.add(acc, base.mul(dx[p], dy[q]));
                        }
                    }
                    buf[k] = acc;
                }
                mul_row[y] = encode(&buf);
            }
        });
    let neg = decoded
        .iter()
        .map(|d| encode(&d.iter().map(|&v| base.neg(v)).collect::<Vec<_>>()))
        .collect();
    let zero_digits = vec![base.zero; digits];
    let zero = encode_digits(&zero_digits, b);
    let one_digits: Vec<Elem> = positions
        .iter()
        .map(|&(i, j)| if i == j { base.one } else { base.zero })
        .collect();
    let one = encode_digits(&one_digits, b);
    FiniteRing::from_flat(size, add, mul, neg, zero, one, Structure::Table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builder() -> RingBuilder {
        RingBuilder::default()
    }

    #[test]
    fn upper_positions_are_dense_row_major() {
        for n in 1..6 {
            let mut expect = 0;
            for i in 0..n {
                for j in i..n {
                    assert_eq!(upper_pos(n, i, j), expect, "n={n} ({i},{j})");
                    expect += 1;
                }
            }
        }
    }

    #[test]
    fn zmod_arithmetic() {
        let z12 = builder().zmod(12).unwrap();
        assert_eq!(z12.size(), 12);
        assert_eq!(z12.one(), 1);
        let z6 = builder().zmod(6).unwrap();
        assert_eq!(z6.mul(3, 4), 0);
        assert_eq!(z6.mul(4, 4), 4);
        let z2 = builder().zmod(2).unwrap();
        assert_ne!(z2.zero(), z2.one());
        assert!(builder().zmod(1).is_err());
    }

    #[test]
    fn product_componentwise() {
        let b = builder();
        let z2z2 = b.product(b.zmod(2).unwrap(), b.zmod(2).unwrap()).unwrap();
        assert_eq!(z2z2.size(), 4);
        let idem: Vec<_> = z2z2
            .elements()
            .filter(|&e| z2z2.is_idempotent(e) && e != z2z2.zero() && e != z2z2.one())
            .map(|e| z2z2.format_element(e))
            .collect();
        assert_eq!(idem, vec!["(0,1)", "(1,0)"]);

        let z2z4 = b.product(b.zmod(2).unwrap(), b.zmod(4).unwrap()).unwrap();
        assert_eq!(z2z4.size(), 8);
        let x = z2z4.parse_element("(0,2)").unwrap();
        assert_eq!(x, 2);
        assert_eq!(z2z4.mul(x, x), z2z4.zero());
    }

    #[test]
    fn matrix_ring_shapes() {
        let b = builder();
        let m2z2 = b.matrix(b.zmod(2).unwrap(), 2).unwrap();
        assert_eq!(m2z2.size(), 16);
        let e12 = m2z2.parse_element("[[0,1],[0,0]]").unwrap();
        assert_eq!(m2z2.mul(e12, e12), m2z2.zero());
        assert_eq!(m2z2.format_element(e12), "[[0,1],[0,0]]");
        assert_eq!(m2z2.format_element(m2z2.one()), "[[1,0],[0,1]]");

        let z5 = b.zmod(5).unwrap();
        let m1 = b.matrix(z5.clone(), 1).unwrap();
        for x in z5.elements() {
            for y in z5.elements() {
                assert_eq!(m1.mul(x, y), z5.mul(x, y));
                assert_eq!(m1.add(x, y), z5.add(x, y));
            }
        }
    }

    #[test]
    fn big_matrix_ring_within_cap() {
        let b = builder();
        let m = b.matrix(b.zmod(8).unwrap(), 2).unwrap();
        assert_eq!(m.size(), 4096);
        let e = m.parse_element("[[1,2],[3,4]]").unwrap();
        let f = m.parse_element("[[5,6],[7,0]]").unwrap();
        // [[1,2],[3,4]]·[[5,6],[7,0]] = [[19,6],[43,18]] ≡ [[3,6],[3,2]] mod 8
        assert_eq!(m.format_element(m.mul(e, f)), "[[3,6],[3,2]]");
    }

    #[test]
    fn cap_refusals() {
        let b = builder();
        let z8 = b.zmod(8).unwrap();
        assert!(matches!(b.matrix(z8.clone(), 3), Err(Error::SizeLimit { .. })));
        let z12 = b.zmod(12).unwrap();
        assert!(matches!(
            b.matrix(z12, 2),
            Err(Error::SizeLimit { requested: 20736, .. })
        ));
        assert!(RingBuilder::new(&Limits::default().with_size_cap(10)).zmod(12).is_err());
    }

    #[test]
    fn triangular_shapes() {
        let b = builder();
        let t = b.upper_triangular(b.zmod(6).unwrap(), 2).unwrap();
        assert_eq!(t.size(), 216);
        let t2 = b.upper_triangular(b.zmod(2).unwrap(), 2).unwrap();
        assert_eq!(t2.size(), 8);
        let u = t2.parse_element("[[0,1],[0,0]]").unwrap();
        assert_eq!(t2.mul(u, u), t2.zero());
        assert!(t2.parse_element("[[0,1],[1,0]]").is_err());
        let t1 = b.upper_triangular(b.zmod(3).unwrap(), 1).unwrap();
        assert_eq!(t1.mul(2, 2), 1);
    }

    #[test]
    fn generalized_triangular_arithmetic() {
        let b = builder();
        let gt = b.generalized_triangular(4, 2, 2).unwrap();
        assert_eq!(gt.size(), 16);
        let x = gt.parse_element("[[2,0],[0,0]]").unwrap();
        let y = gt.parse_element("[[0,1],[0,0]]").unwrap();
        assert_eq!(gt.mul(x, y), gt.zero());
        assert!(matches!(
            b.generalized_triangular(6, 4, 3),
            Err(Error::BimoduleIncompatible { .. })
        ));
        // GT(k,k,k) shares its tables with T2(Zk).
        let g6 = b.generalized_triangular(6, 6, 6).unwrap();
        let t6 = b.upper_triangular(b.zmod(6).unwrap(), 2).unwrap();
        assert_eq!(g6.size(), 216);
        for x in (0..216).step_by(7) {
            for y in 0..216 {
                assert_eq!(g6.mul(x, y), t6.mul(x, y));
                assert_eq!(g6.add(x, y), t6.add(x, y));
            }
        }
        assert_eq!(g6.one(), t6.one());
    }

    #[test]
    fn additive_generators_span() {
        let b = builder();
        let m = b.matrix(b.zmod(4).unwrap(), 2).unwrap();
        let gens = m.additive_generators().to_vec();
        assert_eq!(gens.len(), 4);
        assert!(m.additive_span(gens).is_full());
        let z12 = b.zmod(12).unwrap();
        assert_eq!(z12.additive_span([4]).to_vec(), vec![0, 4, 8]);
        assert_eq!(z12.additive_span([4, 6]).to_vec(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn split_respects_nesting() {
        assert_eq!(split_top_level("[[1,2],[3,4]],5", ','), vec!["[[1,2],[3,4]]", "5"]);
        assert_eq!(split_top_level("(1,0)", ','), vec!["(1,0)"]);
    }
}
