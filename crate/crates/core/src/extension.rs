//! Structure-aware ideal theory for `M_n(R)`, `T_n(R)` and generalized
//! triangular rings `[[S, M], [0, R]]`.
//!
//! Ideals are described by base data ([`StructuredIdeal`]) and `P_A`, primes
//! and the z° test are computed on the base rings alone. A view over
//! `M_n(R)` does not need the ambient ring, so `M_2(ℤ_12)` works although it
//! is past the default size cap. [`materialize`](ExtensionView::materialize)
//! is the only conversion to an [`ElementSubset`] of the ambient ring; the
//! `verify_*` checks compare every structure-aware answer against the
//! brute-force engine through it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::analysis::RingAnalysis;
use crate::classify::{describe_ideal, is_z0_ideal, is_zn0_ideal};
use crate::error::{Error, Result};
use crate::ideal::generated_ideal;
use crate::limits::Limits;
use crate::report::{VerificationReport, Witness};
use crate::ring::{
    decode_digits, gt_decode, gt_encode, split_top_level, strip_delims, upper_pos, Elem, FiniteRing, RingBuilder,
    Structure,
};
use crate::subset::ElementSubset;

pub const MATRIX_P_CHECK_ID: &str = "matrix-p-operator";
pub const MATRIX_Z0_CHECK_ID: &str = "matrix-z0";
pub const TRIANGULAR_P_CHECK_ID: &str = "triangular-p-operator";
pub const TRIANGULAR_PRIMES_CHECK_ID: &str = "triangular-primes";
pub const TRIANGULAR_Z0_CHECK_ID: &str = "triangular-z0";
pub const GT_PRIMES_CHECK_ID: &str = "gt-primes";
pub const GT_P_CHECK_ID: &str = "gt-p-operator";
pub const GT_Z0_CHECK_ID: &str = "gt-z0";

/// Grids enumerated by [`ExtensionView::ideals`] for `T_n`.
const GRID_BUDGET: u128 = 1 << 20;

/// An ideal of a structured ring, given by base data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StructuredIdeal {
    /// `M_n(I)` for an ideal `I` of the base ring.
    Matrix(ElementSubset),
    /// `n × n` grid of base ideals `J_ij`; entries below the diagonal are `{0}`.
    Triangular(Vec<Vec<ElementSubset>>),
    /// `(I, N, L)`: an ideal of `S`, a subgroup of `M`, an ideal of `R`.
    Generalized {
        s: ElementSubset,
        m: ElementSubset,
        r: ElementSubset,
    },
}

/// Base-ring data for a matrix, triangular or generalized triangular ring.
#[allow(clippy::large_enum_variant)]
pub enum ExtensionView {
    Matrix {
        base: RingAnalysis,
        n: usize,
        ambient: Option<Arc<FiniteRing>>,
    },
    Triangular {
        base: RingAnalysis,
        n: usize,
        ambient: Option<Arc<FiniteRing>>,
    },
    Generalized {
        s: RingAnalysis,
        r: RingAnalysis,
        m_mod: usize,
        ambient: Option<Arc<FiniteRing>>,
    },
}

impl fmt::Debug for ExtensionView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtensionView({})", self.spec())
    }
}

impl ExtensionView {
    /// View over an ambient ring built with a structure tag.
    pub fn of(ambient: &Arc<FiniteRing>, limits: &Limits) -> Result<Self> {
        let amb = Some(ambient.clone());
        match ambient.structure() {
            Structure::Matrix { base, n } => Ok(ExtensionView::Matrix {
                base: RingAnalysis::new(base.clone(), limits)?,
                n: *n,
                ambient: amb,
            }),
            Structure::UpperTriangular { base, n } => Ok(ExtensionView::Triangular {
                base: RingAnalysis::new(base.clone(), limits)?,
                n: *n,
                ambient: amb,
            }),
            Structure::GeneralizedTriangular { s_mod, r_mod, m_mod } => {
                let mut v = Self::generalized(*s_mod, *r_mod, *m_mod, limits)?;
                if let ExtensionView::Generalized { ambient, .. } = &mut v {
                    *ambient = amb;
                }
                Ok(v)
            }
            _ => Err(Error::WrongStructure {
                expected: "a matrix, upper triangular or generalized triangular ring",
            }),
        }
    }

    /// `M_n(base)` without building the ambient ring.
    pub fn matrix(base: impl Into<Arc<FiniteRing>>, n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be at least 1".into()));
        }
        Ok(ExtensionView::Matrix {
            base: RingAnalysis::new(base, limits)?,
            n,
            ambient: None,
        })
    }

    /// `T_n(base)` without building the ambient ring.
    pub fn triangular(base: impl Into<Arc<FiniteRing>>, n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be at least 1".into()));
        }
        Ok(ExtensionView::Triangular {
            base: RingAnalysis::new(base, limits)?,
            n,
            ambient: None,
        })
    }

    /// `[[ℤ_s, ℤ_m], [0, ℤ_r]]` without building the ambient ring.
    pub fn generalized(s_mod: usize, r_mod: usize, m_mod: usize, limits: &Limits) -> Result<Self> {
        if !s_mod.is_multiple_of(m_mod.max(1)) || !r_mod.is_multiple_of(m_mod.max(1)) {
            return Err(Error::BimoduleIncompatible { s_mod, r_mod, m_mod });
        }
        let b = RingBuilder::new(limits);
        Ok(ExtensionView::Generalized {
            s: RingAnalysis::new(b.zmod(s_mod)?, limits)?,
            r: RingAnalysis::new(b.zmod(r_mod)?, limits)?,
            m_mod,
            ambient: None,
        })
    }

    pub fn spec(&self) -> String {
        match self {
            ExtensionView::Matrix { base, n, .. } => format!("M{n}({})", base.ring().spec()),
            ExtensionView::Triangular { base, n, .. } => format!("T{n}({})", base.ring().spec()),
            ExtensionView::Generalized { s, r, m_mod, .. } => {
                format!("GT({},{},{m_mod})", s.ring().size(), r.ring().size())
            }
        }
    }

    pub fn ambient(&self) -> Option<&Arc<FiniteRing>> {
        match self {
            ExtensionView::Matrix { ambient, .. }
            | ExtensionView::Triangular { ambient, .. }
            | ExtensionView::Generalized { ambient, .. } => ambient.as_ref(),
        }
    }

    fn require_ambient(&self) -> Result<&Arc<FiniteRing>> {
        self.ambient().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{} was not built; only structure-aware answers are available",
                self.spec()
            ))
        })
    }

    /// Decodes an element index into its matrix entries (row-major, `n × n`).
    ///
    /// Works from the encoding alone, so it needs no ambient ring.
    pub fn entries(&self, a: Elem) -> Vec<Vec<Elem>> {
        match self {
            ExtensionView::Matrix { base, n, .. } => {
                let d = decode_digits(a, base.ring().size(), n * n);
                (0..*n).map(|i| d[i * n..(i + 1) * n].to_vec()).collect()
            }
            ExtensionView::Triangular { base, n, .. } => {
                let d = decode_digits(a, base.ring().size(), n * (n + 1) / 2);
                let z = base.ring().zero();
                (0..*n)
                    .map(|i| {
                        (0..*n)
                            .map(|j| if j < i { z } else { d[upper_pos(*n, i, j)] })
                            .collect()
                    })
                    .collect()
            }
            ExtensionView::Generalized { s, r, m_mod, .. } => {
                let (x, m, y) = gt_decode(a, s.ring().size(), *m_mod, r.ring().size());
                vec![vec![x, m], vec![0, y]]
            }
        }
    }

    /// Number of elements of the ambient ring, saturating.
    pub fn ambient_size(&self) -> u128 {
        match self {
            ExtensionView::Matrix { base, n, .. } => (base.ring().size() as u128).saturating_pow((n * n) as u32),
            ExtensionView::Triangular { base, n, .. } => {
                (base.ring().size() as u128).saturating_pow((n * (n + 1) / 2) as u32)
            }
            ExtensionView::Generalized { s, r, m_mod, .. } => {
                s.ring().size() as u128 * r.ring().size() as u128 * *m_mod as u128
            }
        }
    }

    fn subgroups_of_m(m_mod: usize) -> Vec<ElementSubset> {
        (1..=m_mod)
            .filter(|d| m_mod.is_multiple_of(*d))
            .map(|d| ElementSubset::from_predicate(m_mod, |x| x % d == 0))
            .rev()
            .collect()
    }

    /// Every ideal of the ambient ring, described structurally.
    pub fn ideals(&self) -> Result<Vec<StructuredIdeal>> {
        match self {
            ExtensionView::Matrix { base, .. } => Ok(base
                .lattice()
                .ideals()
                .iter()
                .map(|i| StructuredIdeal::Matrix(i.clone()))
                .collect()),
            ExtensionView::Triangular { base, n, .. } => {
                let k = base.ideal_count() as u128;
                let cells = n * (n + 1) / 2;
                let needed = k.saturating_pow(cells as u32);
                if needed > GRID_BUDGET {
                    return Err(Error::BudgetExceeded {
                        what: "triangular grid enumeration".into(),
                        needed,
                        budget: GRID_BUDGET,
                    });
                }
                let mut out = Vec::new();
                for code in 0..needed as usize {
                    let digits = decode_digits(code, k as usize, cells);
                    let idx = |i: usize, j: usize| digits[upper_pos(*n, i, j)];
                    let lat = base.lattice();
                    let nested = (0..*n).all(|i| {
                        (i..*n).all(|j| {
                            (j + 1 >= *n || lat.leq(idx(i, j), idx(i, j + 1)))
                                && (i == 0 || lat.leq(idx(i, j), idx(i - 1, j)))
                        })
                    });
                    if nested {
                        out.push(self.grid_from(|i, j| base.ideal(idx(i, j)).clone()));
                    }
                }
                Ok(out)
            }
            ExtensionView::Generalized { s, r, m_mod, .. } => {
                let mut out = Vec::new();
                for i in s.lattice().ideals() {
                    for l in r.lattice().ideals() {
                        for n in Self::subgroups_of_m(*m_mod) {
                            let t = StructuredIdeal::Generalized {
                                s: i.clone(),
                                m: n,
                                r: l.clone(),
                            };
                            if self.validate(&t).is_ok() {
                                out.push(t);
                            }
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    fn grid_from(&self, cell: impl Fn(usize, usize) -> ElementSubset) -> StructuredIdeal {
        let ExtensionView::Triangular { base, n, .. } = self else {
            unreachable!("grid_from on a non-triangular view")
        };
        StructuredIdeal::Triangular(
            (0..*n)
                .map(|i| {
                    (0..*n)
                        .map(|j| if j < i { base.ring().zero_subset() } else { cell(i, j) })
                        .collect()
                })
                .collect(),
        )
    }

    fn wrong_kind(&self) -> Error {
        Error::InvalidStructuredIdeal(format!("description does not match {}", self.spec()))
    }

    /// Checks that a description denotes an ideal of the ambient ring.
    pub fn validate(&self, ideal: &StructuredIdeal) -> Result<()> {
        match (self, ideal) {
            (ExtensionView::Matrix { base, .. }, StructuredIdeal::Matrix(i)) => base.require_ideal(i).map(|_| ()),
            (ExtensionView::Triangular { base, n, .. }, StructuredIdeal::Triangular(g)) => {
                if g.len() != *n || g.iter().any(|row| row.len() != *n) {
                    return Err(Error::InvalidStructuredIdeal(format!("grid must be {n}×{n}")));
                }
                let zero = base.ring().zero_subset();
                for i in 0..*n {
                    for j in 0..*n {
                        if j < i {
                            if g[i][j] != zero {
                                return Err(Error::InvalidStructuredIdeal(
                                    "entries below the diagonal must be 0".into(),
                                ));
                            }
                            continue;
                        }
                        base.require_ideal(&g[i][j])?;
                        if j + 1 < *n && !g[i][j].is_subset(&g[i][j + 1]) {
                            return Err(Error::InvalidStructuredIdeal(format!(
                                "J[{i}][{j}] must lie in J[{i}][{}]",
                                j + 1
                            )));
                        }
                        if i > 0 && !g[i][j].is_subset(&g[i - 1][j]) {
                            return Err(Error::InvalidStructuredIdeal(format!(
                                "J[{i}][{j}] must lie in J[{}][{j}]",
                                i - 1
                            )));
                        }
                    }
                }
                Ok(())
            }
            (ExtensionView::Generalized { s, r, m_mod, .. }, StructuredIdeal::Generalized { s: i, m: nn, r: l }) => {
                s.require_ideal(i)?;
                r.require_ideal(l)?;
                if nn.universe() != *m_mod
                    || !nn.contains(0)
                    || !nn.iter().all(|a| nn.iter().all(|b| nn.contains((a + b) % m_mod)))
                {
                    return Err(Error::InvalidStructuredIdeal(
                        "middle entry must be a subgroup of M".into(),
                    ));
                }
                let absorbs = i
                    .iter()
                    .all(|x| (0..*m_mod).all(|m| nn.contains(x % m_mod * m % m_mod)))
                    && l.iter()
                        .all(|y| (0..*m_mod).all(|m| nn.contains(m * (y % m_mod) % m_mod)));
                if !absorbs {
                    return Err(Error::InvalidStructuredIdeal("I·M + M·L must lie in N".into()));
                }
                Ok(())
            }
            _ => Err(self.wrong_kind()),
        }
    }

    /// The element set of the ambient ring described by `ideal`.
    pub fn materialize(&self, ideal: &StructuredIdeal) -> Result<ElementSubset> {
        self.validate(ideal)?;
        let amb = self.require_ambient()?;
        let size = amb.size();
        let set = match (self, ideal) {
            (ExtensionView::Matrix { .. }, StructuredIdeal::Matrix(i)) => {
                ElementSubset::from_predicate(size, |e| self.entries(e).iter().flatten().all(|&x| i.contains(x)))
            }
            (ExtensionView::Triangular { n, .. }, StructuredIdeal::Triangular(g)) => {
                ElementSubset::from_predicate(size, |e| {
                    let ent = self.entries(e);
                    (0..*n).all(|i| (i..*n).all(|j| g[i][j].contains(ent[i][j])))
                })
            }
            (ExtensionView::Generalized { s, m_mod, .. }, StructuredIdeal::Generalized { s: i, m: nn, r: l }) => {
                let mut out = ElementSubset::empty(size);
                for x in i.iter() {
                    for m in nn.iter() {
                        for y in l.iter() {
                            out.insert(gt_encode(x, m, y, s.ring().size(), *m_mod));
                        }
                    }
                }
                out
            }
            _ => return Err(self.wrong_kind()),
        };
        Ok(set)
    }

    /// `P_A` for the element with index `a`.
    ///
    /// `M_n`: `M_n(P_B)` with `B` the entries of `a`. `T_n`: diagonal
    /// `P_{a_ii}`, `R` above the diagonal. GT: `(P_{a11}, M, P_{a22})`.
    pub fn p_of(&self, a: Elem) -> StructuredIdeal {
        let ent = self.entries(a);
        match self {
            ExtensionView::Matrix { base, .. } => StructuredIdeal::Matrix(base.p_of(ent.iter().flatten().copied())),
            ExtensionView::Triangular { base, .. } => self.grid_from(|i, j| {
                if i == j {
                    base.p_of_element(ent[i][i]).clone()
                } else {
                    base.ring().full_subset()
                }
            }),
            ExtensionView::Generalized { s, r, m_mod, .. } => StructuredIdeal::Generalized {
                s: s.p_of_element(ent[0][0]).clone(),
                m: ElementSubset::full(*m_mod),
                r: r.p_of_element(ent[1][1]).clone(),
            },
        }
    }

    /// `P_A` for a matrix given by its entries (row-major), for `M_n` views.
    pub fn matrix_p_of_entries(&self, entries: &[Elem]) -> Result<StructuredIdeal> {
        match self {
            ExtensionView::Matrix { base, n, .. } if entries.len() == n * n => {
                Ok(StructuredIdeal::Matrix(base.p_of(entries.iter().copied())))
            }
            ExtensionView::Matrix { n, .. } => Err(Error::InvalidArgument(format!("expected {} entries", n * n))),
            _ => Err(Error::WrongStructure {
                expected: "a matrix ring M_n(R)",
            }),
        }
    }

    /// The prime ideals, described structurally.
    ///
    /// `M_n`: `M_n(P)`. `T_n`: all entries `R` except one diagonal prime.
    /// GT: `(P, M, R)` and `(S, M, Q)`.
    pub fn primes(&self) -> Vec<StructuredIdeal> {
        match self {
            ExtensionView::Matrix { base, .. } => base
                .spectrum()
                .primes
                .iter()
                .map(|&p| StructuredIdeal::Matrix(base.ideal(p).clone()))
                .collect(),
            ExtensionView::Triangular { base, n, .. } => (0..*n)
                .flat_map(|k| {
                    base.spectrum().primes.iter().map(move |&p| {
                        self.grid_from(|i, j| {
                            if i == k && j == k {
                                base.ideal(p).clone()
                            } else {
                                base.ring().full_subset()
                            }
                        })
                    })
                })
                .collect(),
            ExtensionView::Generalized { s, r, m_mod, .. } => {
                let m = ElementSubset::full(*m_mod);
                let left = s.spectrum().primes.iter().map(|&p| StructuredIdeal::Generalized {
                    s: s.ideal(p).clone(),
                    m: m.clone(),
                    r: r.ring().full_subset(),
                });
                let right = r.spectrum().primes.iter().map(|&q| StructuredIdeal::Generalized {
                    s: s.ring().full_subset(),
                    m: m.clone(),
                    r: r.ideal(q).clone(),
                });
                left.chain(right).collect()
            }
        }
    }

    /// Structure-aware z° test.
    ///
    /// `M_n(I)` is z° iff `I` is z_{n²}°; a `T_n` grid iff every diagonal
    /// entry is z° and every entry above it is `R`; `(I, N, L)` iff `N = M`
    /// and `I`, `L` are z°.
    pub fn is_z0(&self, ideal: &StructuredIdeal) -> Result<bool> {
        self.validate(ideal)?;
        match (self, ideal) {
            (ExtensionView::Matrix { base, n, .. }, StructuredIdeal::Matrix(i)) => is_zn0_ideal(base, i, n * n),
            (ExtensionView::Triangular { base, .. }, StructuredIdeal::Triangular(g)) => {
                for (i, row) in g.iter().enumerate() {
                    if !is_z0_ideal(base, &row[i])? || row[i + 1..].iter().any(|c| !c.is_full()) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (ExtensionView::Generalized { s, r, .. }, StructuredIdeal::Generalized { s: i, m, r: l }) => {
                Ok(m.is_full() && is_z0_ideal(s, i)? && is_z0_ideal(r, l)?)
            }
            _ => Err(self.wrong_kind()),
        }
    }

    /// Human-readable description in the same syntax [`parse_ideal`](Self::parse_ideal) accepts.
    pub fn describe(&self, ideal: &StructuredIdeal) -> String {
        match (self, ideal) {
            (ExtensionView::Matrix { base, n, .. }, StructuredIdeal::Matrix(i)) => {
                format!("M{n}({})", describe_ideal(base.ring(), i))
            }
            (ExtensionView::Triangular { base, n, .. }, StructuredIdeal::Triangular(g)) => {
                let rows: Vec<String> = (0..*n)
                    .map(|i| {
                        let cells: Vec<String> = (0..*n).map(|j| describe_ideal(base.ring(), &g[i][j])).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            (ExtensionView::Generalized { s, r, .. }, StructuredIdeal::Generalized { s: i, m, r: l }) => {
                let gens: Vec<String> = m.iter().filter(|&x| x != 0).take(1).map(|x| x.to_string()).collect();
                format!(
                    "({}, <{}>, {})",
                    describe_ideal(s.ring(), i),
                    gens.join(""),
                    describe_ideal(r.ring(), l)
                )
            }
            _ => "<mismatched description>".to_string(),
        }
    }

    /// Parses `Mn:<gens>`, `Tn:[[cell,..],..]` or `GT:(cell,cell,cell)`.
    ///
    /// Matrix generators are comma separated; a cell lists generators
    /// separated by `;`, with `0` for the zero ideal and `R` (or `S`, `M`) for
    /// the whole component.
    pub fn parse_ideal(&self, text: &str) -> Result<StructuredIdeal> {
        let t = text.trim();
        let (tag, body) = t
            .split_once(':')
            .ok_or_else(|| Error::parse(text, 0, "expected a Mn:, Tn: or GT: prefix"))?;
        let tag = tag.trim();
        let dim_ok = |prefix: char, n: usize| {
            tag.strip_prefix(prefix)
                .is_some_and(|d| d == "n" || d.parse::<usize>().ok() == Some(n))
        };
        let ideal = match self {
            ExtensionView::Matrix { base, n, .. } if dim_ok('M', *n) => {
                let mut gens = Vec::new();
                for g in split_top_level(body, ',') {
                    if !g.trim().is_empty() {
                        gens.push(base.ring().parse_element(g)?);
                    }
                }
                StructuredIdeal::Matrix(generated_ideal(base.ring(), gens))
            }
            ExtensionView::Triangular { base, n, .. } if dim_ok('T', *n) => {
                let outer = strip_delims(body, '[', ']').ok_or_else(|| Error::parse(text, 0, "expected [[..],..]"))?;
                let rows = split_top_level(outer, ',');
                if rows.len() != *n {
                    return Err(Error::parse(text, 0, format!("expected {n} rows")));
                }
                let mut grid = Vec::with_capacity(*n);
                for row in rows {
                    let inner =
                        strip_delims(row, '[', ']').ok_or_else(|| Error::parse(text, 0, "expected a bracketed row"))?;
                    let cells = split_top_level(inner, ',');
                    if cells.len() != *n {
                        return Err(Error::parse(text, 0, format!("expected {n} cells per row")));
                    }
                    grid.push(
                        cells
                            .iter()
                            .map(|c| parse_cell(base.ring(), c))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                StructuredIdeal::Triangular(grid)
            }
            ExtensionView::Generalized { s, r, m_mod, .. } if tag == "GT" => {
                let inner = strip_delims(body, '(', ')').ok_or_else(|| Error::parse(text, 0, "expected (I,N,L)"))?;
                let parts = split_top_level(inner, ',');
                if parts.len() != 3 {
                    return Err(Error::parse(text, 0, "expected three components"));
                }
                StructuredIdeal::Generalized {
                    s: parse_cell(s.ring(), parts[0])?,
                    m: parse_module_cell(*m_mod, parts[1])?,
                    r: parse_cell(r.ring(), parts[2])?,
                }
            }
            _ => {
                return Err(Error::parse(
                    text,
                    0,
                    format!("prefix {tag:?} does not match {}", self.spec()),
                ))
            }
        };
        self.validate(&ideal)?;
        Ok(ideal)
    }
}

fn parse_cell(ring: &FiniteRing, cell: &str) -> Result<ElementSubset> {
    let c = cell.trim();
    if matches!(c, "R" | "S" | "M") {
        return Ok(ring.full_subset());
    }
    let mut gens = Vec::new();
    for g in c.split(';') {
        if !g.trim().is_empty() {
            gens.push(ring.parse_element(g)?);
        }
    }
    Ok(generated_ideal(ring, gens))
}

fn parse_module_cell(m_mod: usize, cell: &str) -> Result<ElementSubset> {
    let c = cell.trim();
    if c == "M" {
        return Ok(ElementSubset::full(m_mod));
    }
    let mut d = m_mod;
    for g in c.split(';').map(str::trim).filter(|g| !g.is_empty()) {
        let v: i64 = g.parse().map_err(|_| Error::parse(cell, 0, "expected an integer"))?;
        d = gcd(d, v.rem_euclid(m_mod as i64) as usize);
    }
    Ok(ElementSubset::from_predicate(m_mod, |x| x % d == 0))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---- cross-checks against the brute-force engine ----

enum Kind {
    Matrix,
    Triangular,
    Generalized,
}

impl Kind {
    fn name(&self) -> &'static str {
        match self {
            Kind::Matrix => "ring is M_n(R)",
            Kind::Triangular => "ring is T_n(R)",
            Kind::Generalized => "ring is generalized triangular",
        }
    }

    fn matches(&self, v: &ExtensionView) -> bool {
        matches!(
            (self, v),
            (Kind::Matrix, ExtensionView::Matrix { .. })
                | (Kind::Triangular, ExtensionView::Triangular { .. })
                | (Kind::Generalized, ExtensionView::Generalized { .. })
        )
    }
}

/// Builds the view and records the structure and size hypotheses.
fn gate(analysis: &RingAnalysis, check_id: &str, kind: Kind) -> Result<(VerificationReport, Option<ExtensionView>)> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), check_id);
    let view = ExtensionView::of(analysis.ring_arc(), analysis.limits()).ok();
    let fits = view.as_ref().is_some_and(|v| kind.matches(v));
    report.hypothesis(kind.name(), fits);
    if !fits {
        return Ok((report, None));
    }
    let max = analysis.limits().oracle_max_size;
    if !report.hypothesis(
        format!("|R| ≤ {max} for the brute-force comparison"),
        ring.size() <= max,
    ) {
        return Ok((report, None));
    }
    Ok((report, view))
}

/// Compares the structural `P_A` with the brute-force `P_A` for every element.
fn compare_p_operator(analysis: &RingAnalysis, view: &ExtensionView, report: &mut VerificationReport) -> Result<bool> {
    let ring = analysis.ring();
    let structural: Vec<StructuredIdeal> = ring.elements().into_par_iter().map(|a| view.p_of(a)).collect();
    let mut cache: HashMap<&StructuredIdeal, ElementSubset> = HashMap::new();
    let mut mismatches = 0usize;
    for (a, s) in structural.iter().enumerate() {
        if !cache.contains_key(s) {
            cache.insert(s, view.materialize(s)?);
        }
        if cache[s] != *analysis.p_of_element(a) {
            if mismatches == 0 {
                report.witness(Witness::element(ring, "a", a));
                report.witness(Witness::ideal(ring, "structural P_a", &cache[s]));
                report.witness(Witness::ideal(ring, "brute-force P_a", analysis.p_of_element(a)));
            }
            mismatches += 1;
        }
    }
    report.note(format!(
        "{} elements, {} distinct P_A values, {mismatches} mismatches",
        ring.size(),
        cache.len()
    ));
    Ok(mismatches == 0)
}

/// Compares the structural ideal list with the enumerated lattice.
fn compare_ideal_sets(analysis: &RingAnalysis, view: &ExtensionView, report: &mut VerificationReport) -> Result<bool> {
    let mut structural: Vec<ElementSubset> = view
        .ideals()?
        .iter()
        .map(|i| view.materialize(i))
        .collect::<Result<_>>()?;
    structural.sort();
    structural.dedup();
    let same = structural.as_slice() == analysis.lattice().ideals();
    report.note(format!(
        "{} structural ideals, {} enumerated ideals",
        structural.len(),
        analysis.ideal_count()
    ));
    if !same {
        report.note("structural ideal list differs from the enumerated lattice");
        if let Some(extra) = analysis.lattice().ideals().iter().find(|i| !structural.contains(i)) {
            report.witness(Witness::ideal(analysis.ring(), "unlisted ideal", extra));
        }
    }
    Ok(same)
}

fn compare_primes(analysis: &RingAnalysis, view: &ExtensionView, report: &mut VerificationReport) -> Result<bool> {
    let mut structural: Vec<ElementSubset> = view
        .primes()
        .iter()
        .map(|p| view.materialize(p))
        .collect::<Result<_>>()?;
    structural.sort();
    structural.dedup();
    let brute: Vec<ElementSubset> = analysis
        .spectrum()
        .primes
        .iter()
        .map(|&k| analysis.ideal(k).clone())
        .collect();
    report.note(format!(
        "{} structural primes, {} brute-force primes",
        structural.len(),
        brute.len()
    ));
    let same = structural == brute;
    if !same {
        report.note("structural prime list differs from the brute-force primes");
        if let Some(p) = brute.iter().find(|p| !structural.contains(p)) {
            report.witness(Witness::ideal(analysis.ring(), "unlisted prime", p));
        }
    }
    Ok(same)
}

/// Compares the structural z° verdict with the brute-force one on every ideal.
fn compare_z0(analysis: &RingAnalysis, view: &ExtensionView, report: &mut VerificationReport) -> Result<bool> {
    let ring = analysis.ring();
    let mut ok = true;
    let mut z0 = 0;
    for ideal in view.ideals()? {
        let structural = view.is_z0(&ideal)?;
        let set = view.materialize(&ideal)?;
        let brute = is_z0_ideal(analysis, &set)?;
        z0 += usize::from(structural);
        if structural != brute {
            ok = false;
            report.note(format!(
                "{}: structural {structural}, brute force {brute}",
                view.describe(&ideal)
            ));
            report.witness(Witness::ideal(ring, "ideal", &set));
        }
    }
    report.note(format!(
        "{} ideals, {z0} z° by the structural criterion",
        analysis.ideal_count()
    ));
    Ok(ok)
}

macro_rules! extension_check {
    ($(#[$doc:meta])* $name:ident, $id:expr, $kind:expr, |$a:ident, $v:ident, $r:ident| $body:expr) => {
        $(#[$doc])*
        pub fn $name($a: &RingAnalysis) -> Result<VerificationReport> {
            let (mut $r, view) = gate($a, $id, $kind)?;
            let Some($v) = view else {
                return Ok($r.conclude(false));
            };
            let holds: bool = $body;
            Ok($r.conclude(holds))
        }
    };
}

extension_check!(
    /// `P_A = M_n(P_B)` for every element, the ideals are exactly the `M_n(I)`, and `P(M_n(R)) = M_n(P(R))`.
    verify_matrix_p_operator, MATRIX_P_CHECK_ID, Kind::Matrix, |analysis, view, report| {
        let ExtensionView::Matrix { base, .. } = &view else { unreachable!() };
        let radical = view.materialize(&StructuredIdeal::Matrix(base.prime_radical().clone()))?;
        let radical_ok = &radical == analysis.prime_radical();
        if !radical_ok {
            report.note("P(M_n(R)) differs from M_n(P(R))");
        }
        compare_p_operator(analysis, &view, &mut report)? & compare_ideal_sets(analysis, &view, &mut report)? & radical_ok
    }
);

extension_check!(
    /// `M_n(I)` is z° iff `I` is a z_{n²}°-ideal, on every ideal.
    verify_matrix_z0, MATRIX_Z0_CHECK_ID, Kind::Matrix, |analysis, view, report| {
        compare_z0(analysis, &view, &mut report)?
    }
);

extension_check!(
    /// `P_A` of `T_n(R)` has diagonal `P_{a_ii}` and `R` above it, for every element.
    verify_triangular_p_operator, TRIANGULAR_P_CHECK_ID, Kind::Triangular, |analysis, view, report| {
        compare_p_operator(analysis, &view, &mut report)?
    }
);

extension_check!(
    /// The ideals of `T_n(R)` are the nested grids and the primes are the grids
    /// with `R` everywhere except one prime diagonal entry.
    verify_triangular_primes, TRIANGULAR_PRIMES_CHECK_ID, Kind::Triangular, |analysis, view, report| {
        compare_ideal_sets(analysis, &view, &mut report)? & compare_primes(analysis, &view, &mut report)?
    }
);

extension_check!(
    /// A grid ideal is z° iff its diagonal entries are z° and its upper entries are `R`.
    verify_triangular_z0, TRIANGULAR_Z0_CHECK_ID, Kind::Triangular, |analysis, view, report| {
        compare_z0(analysis, &view, &mut report)?
    }
);

extension_check!(
    /// The ideals are the triples `(I, N, L)` with `IM + ML ⊆ N`, the primes are
    /// `(P, M, R)` and `(S, M, Q)`, and every prime has middle entry `M`.
    verify_gt_primes, GT_PRIMES_CHECK_ID, Kind::Generalized, |analysis, view, report| {
        let middle_ok = view.primes().iter().all(|p| matches!(p, StructuredIdeal::Generalized { m, .. } if m.is_full()));
        compare_ideal_sets(analysis, &view, &mut report)? & compare_primes(analysis, &view, &mut report)? & middle_ok
    }
);

extension_check!(
    /// `P_A = (P_{a11}, M, P_{a22})` for every element.
    verify_gt_p_operator, GT_P_CHECK_ID, Kind::Generalized, |analysis, view, report| {
        compare_p_operator(analysis, &view, &mut report)?
    }
);

extension_check!(
    /// `(I, N, L)` is z° iff `N = M` and `I`, `L` are z°, on every ideal.
    verify_gt_z0, GT_Z0_CHECK_ID, Kind::Generalized, |analysis, view, report| {
        compare_z0(analysis, &view, &mut report)?
    }
);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn analyze(spec: &str) -> RingAnalysis {
        RingAnalysis::new(RingBuilder::default().parse(spec).unwrap(), &Limits::default()).unwrap()
    }

    fn view(a: &RingAnalysis) -> ExtensionView {
        ExtensionView::of(a.ring_arc(), a.limits()).unwrap()
    }

    #[test]
    fn matrix_over_zmod12_needs_no_ambient() {
        let z12 = RingBuilder::default().zmod(12).unwrap();
        let v = ExtensionView::matrix(z12, 2, &Limits::default()).unwrap();
        assert!(v.ambient().is_none());
        let StructuredIdeal::Matrix(p) = v.matrix_p_of_entries(&[4, 0, 0, 3]).unwrap() else {
            panic!()
        };
        assert!(p.is_full());
        let StructuredIdeal::Matrix(p) = v.matrix_p_of_entries(&[0, 0, 0, 0]).unwrap() else {
            panic!()
        };
        assert_eq!(p.to_vec(), vec![0, 6]);
        let four = v.parse_ideal("Mn:4").unwrap();
        assert!(!v.is_z0(&four).unwrap());
        assert!(v.materialize(&four).is_err());
    }

    #[test]
    fn triangular_p_of_diagonal() {
        let z12 = RingBuilder::default().zmod(12).unwrap();
        let v = ExtensionView::triangular(z12, 2, &Limits::default()).unwrap();
        // a11 = 4, a22 = 3: digits (a11, a12, a22) base 12
        let a = 4 + 12 * 12 * 3;
        let p = v.p_of(a);
        assert_eq!(v.describe(&p), "[[<2>,<1>],[<>,<3>]]");
    }

    #[test]
    fn gt_p_of_examples() {
        let a = analyze("GT(6,6,6)");
        let v = view(&a);
        let x = a.ring().parse_element("[[3,1],[0,0]]").unwrap();
        assert_eq!(v.describe(&v.p_of(x)), "(<3>, <1>, <>)");
        assert_eq!(v.describe(&v.p_of(0)), "(<>, <1>, <>)");
        let b = analyze("GT(2,2,2)");
        let w = view(&b);
        assert!(w.materialize(&w.p_of(b.ring().one())).unwrap().is_full());
    }

    #[test]
    fn gt_primes_of_gt666() {
        let a = analyze("GT(6,6,6)");
        assert_eq!(view(&a).primes().len(), 4);
        assert_eq!(view(&analyze("GT(2,2,2)")).primes().len(), 2);
    }

    #[test]
    fn parsed_structured_ideals() {
        let a = analyze("GT(6,6,6)");
        let v = view(&a);
        let i = v.parse_ideal("GT:(3,1,2)").unwrap();
        assert!(v.is_z0(&i).unwrap());
        assert_eq!(v.materialize(&i).unwrap().count(), 2 * 6 * 3);
        // M·<2> is not inside {0, 3}, so this triple is not an ideal at all.
        assert!(matches!(
            v.parse_ideal("GT:(3,3,2)"),
            Err(Error::InvalidStructuredIdeal(_))
        ));
        let j = v.parse_ideal("GT:(3,3,3)").unwrap();
        assert!(!v.is_z0(&j).unwrap());
        assert!(v.parse_ideal("GT:(1,0,0)").is_err());

        let t = analyze("T2(Z6)");
        let tv = view(&t);
        let g = tv.parse_ideal("Tn:[[3,R],[0,2]]").unwrap();
        assert!(tv.is_z0(&g).unwrap());
        let zero = tv.parse_ideal("T2:[[0,0],[0,0]]").unwrap();
        assert!(!tv.is_z0(&zero).unwrap());
        let upper = tv.parse_ideal("Tn:[[0,R],[0,0]]").unwrap();
        assert!(tv.is_z0(&upper).unwrap());
        assert!(tv.parse_ideal("Tn:[[R,0],[0,0]]").is_err());
    }

    #[test]
    fn checks_pass_on_small_rings() {
        for (spec, checks) in [
            (
                "M2(Z2)",
                vec![
                    verify_matrix_p_operator as fn(&RingAnalysis) -> Result<VerificationReport>,
                    verify_matrix_z0,
                ],
            ),
            (
                "T2(Z2)",
                vec![
                    verify_triangular_p_operator,
                    verify_triangular_primes,
                    verify_triangular_z0,
                ],
            ),
            (
                "T2(Z4)",
                vec![
                    verify_triangular_p_operator,
                    verify_triangular_primes,
                    verify_triangular_z0,
                ],
            ),
            ("GT(4,2,2)", vec![verify_gt_primes, verify_gt_p_operator, verify_gt_z0]),
        ] {
            let a = analyze(spec);
            for c in checks {
                let r = c(&a).unwrap();
                assert_eq!(r.verdict, Verdict::Pass, "{spec} {}: {:?}", r.check_id, r.notes);
            }
        }
    }

    #[test]
    fn wrong_structure_is_a_hypothesis_failure() {
        let a = analyze("Z6");
        assert_eq!(verify_matrix_z0(&a).unwrap().verdict, Verdict::HypothesisNotMet);
        assert_eq!(
            verify_gt_primes(&analyze("T2(Z2)")).unwrap().verdict,
            Verdict::HypothesisNotMet
        );
    }
}
