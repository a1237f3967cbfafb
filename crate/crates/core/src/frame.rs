//! The lattice of right annihilator ideals with `I ∨ J = r(l(I) ∩ l(J))` and
//! `I ∧ J = I ∩ J`, and the identities behind its frame structure.
//!
//! Every finite lattice is complete, algebraic and coherent, so the checks here
//! test the concrete identities (distributivity, the sum identity, principal
//! decompositions, the reducedness criterion and the meet formula for
//! principal annihilators) rather than frame theory in general.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::RingAnalysis;
use crate::classify::describe_ideal;
use crate::error::{Error, Result};
use crate::ideal::ideal_generators;
use crate::report::{VerificationReport, Witness};
use crate::ring::Elem;
use crate::subset::ElementSubset;

pub const LATTICE_CHECK_ID: &str = "annihilator-lattice";
pub const FRAME_LAW_CHECK_ID: &str = "frame-law";
pub const SUM_IDENTITY_CHECK_ID: &str = "sum-identity";
pub const COMPACT_CHECK_ID: &str = "compact-decomposition";
pub const COHERENCE_CHECK_ID: &str = "coherence";

/// Subsets of at most this size are always swept when sampling.
const SMALL_SUBSET_MAX: usize = 3;

/// `rAnn(id(R))` with its join and meet tables.
///
/// Positions `0..len()` index the right annihilator ideals in ascending
/// ideal-lattice order; position 0 is `{0}` and the last is `R`.
#[derive(Debug, Clone)]
pub struct AnnihilatorLattice {
    elements: Vec<usize>,
    position: Vec<Option<usize>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
    principal_anns: Vec<usize>,
}

impl AnnihilatorLattice {
    /// Filters the ideal lattice by `r(l(I)) = I` and fills both tables.
    ///
    /// Fails with a consistency error if a join or meet leaves the set.
    pub fn build(analysis: &RingAnalysis) -> Result<Self> {
        let elements = analysis.annihilator_indices();
        let mut position = vec![None; analysis.ideal_count()];
        for (p, &k) in elements.iter().enumerate() {
            position[k] = Some(p);
        }
        let pos = |k: usize, what: &str| {
            position[k].ok_or_else(|| Error::Consistency(format!("{what} is not a right annihilator ideal")))
        };
        let len = elements.len();
        let mut join = vec![vec![0; len]; len];
        let mut meet = vec![vec![0; len]; len];
        for (p, &i) in elements.iter().enumerate() {
            for (q, &j) in elements.iter().enumerate() {
                let l = analysis.meet_index(analysis.left_ann_index(i), analysis.left_ann_index(j));
                join[p][q] = pos(analysis.right_ann_index(l), "r(l(I) ∩ l(J))")?;
                meet[p][q] = pos(analysis.meet_index(i, j), "I ∩ J")?;
            }
        }
        let principal_anns = analysis
            .ring()
            .elements()
            .map(|a| pos(analysis.principal_closure_index(a), "r(l(RaR))"))
            .collect::<Result<_>>()?;
        Ok(AnnihilatorLattice {
            elements,
            position,
            join,
            meet,
            principal_anns,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Ideal-lattice index of the element at position `p`.
    pub fn ideal_index(&self, p: usize) -> usize {
        self.elements[p]
    }

    /// Position of the ideal with lattice index `k`, if it is an annihilator ideal.
    pub fn position_of(&self, k: usize) -> Option<usize> {
        self.position.get(k).copied().flatten()
    }

    pub fn join(&self, p: usize, q: usize) -> usize {
        self.join[p][q]
    }

    pub fn meet(&self, p: usize, q: usize) -> usize {
        self.meet[p][q]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// `p ≤ q`, read off the meet table.
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.meet[p][q] == p
    }

    /// Join of any family; the empty join is the bottom.
    pub fn join_all(&self, ps: impl IntoIterator<Item = usize>) -> usize {
        ps.into_iter().fold(self.bottom(), |acc, p| self.join[acc][p])
    }

    /// Position of `r(l(RaR))`.
    pub fn principal_ann(&self, a: Elem) -> usize {
        self.principal_anns[a]
    }

    /// Hasse diagram edges `(lower, upper)`, in position order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if p != q && self.leq(p, q) && !(0..n).any(|r| r != p && r != q && self.leq(p, r) && self.leq(r, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// DOT digraph of the Hasse diagram, bottom to top.
    pub fn to_dot(&self, analysis: &RingAnalysis) -> String {
        let ring = analysis.ring();
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"rAnn({})\" {{", ring.spec());
        let _ = writeln!(out, "  rankdir=BT;");
        for p in 0..self.len() {
            let label = describe_ideal(ring, analysis.ideal(self.elements[p]));
            let _ = writeln!(out, "  n{p} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (p, q) in self.covers() {
            let _ = writeln!(out, "  n{p} -> n{q};");
        }
        out.push_str("}\n");
        out
    }

    /// Serializable form: generator lists and index tables.
    pub fn to_json(&self, analysis: &RingAnalysis) -> LatticeJson {
        let ring = analysis.ring();
        LatticeJson {
            schema: crate::report::SCHEMA_VERSION,
            ring_spec: ring.spec(),
            elements: self
                .elements
                .iter()
                .map(|&k| {
                    ideal_generators(ring, analysis.ideal(k))
                        .into_iter()
                        .map(|g| ring.format_element(g))
                        .collect()
                })
                .collect(),
            join: self.join.clone(),
            meet: self.meet.clone(),
            covers: self.covers(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeJson {
    pub schema: u32,
    pub ring_spec: String,
    pub elements: Vec<Vec<String>>,
    pub join: Vec<Vec<usize>>,
    pub meet: Vec<Vec<usize>>,
    pub covers: Vec<(usize, usize)>,
}

/// Closure and boundedness of `rAnn(id(R))`.
///
/// `I ∩ J` and `r(l(I) ∩ l(J))` are annihilator ideals (checked while
/// building), the join is the least upper bound within the set, `{0}` and `R`
/// are the bounds, and every element is the join of the `r(l(RaR))` below it.
pub fn verify_annihilator_lattice(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), LATTICE_CHECK_ID);
    let lat = match AnnihilatorLattice::build(analysis) {
        Ok(l) => l,
        Err(e) => {
            report.note(e.to_string());
            return report.conclude(false);
        }
    };
    let n = lat.len();
    let mut ok = true;
    if lat.ideal_index(0) != analysis.lattice().zero_index()
        || lat.ideal_index(lat.top()) != analysis.lattice().top_index()
    {
        ok = false;
        report.note("lattice is not bounded by {0} and R");
    }
    for p in 0..n {
        for q in 0..n {
            let j = lat.join(p, q);
            let upper = lat.leq(p, j) && lat.leq(q, j);
            let least = (0..n).all(|u| !(lat.leq(p, u) && lat.leq(q, u)) || lat.leq(j, u));
            if !upper || !least {
                ok = false;
                report.note("r(l(I) ∩ l(J)) is not the least upper bound");
                report.witness(Witness::ideal(ring, "I", analysis.ideal(lat.ideal_index(p))));
                report.witness(Witness::ideal(ring, "J", analysis.ideal(lat.ideal_index(q))));
            }
        }
    }
    for p in 0..n {
        let k = lat.ideal_index(p);
        let below = analysis.ideal(k).iter().map(|a| lat.principal_ann(a));
        if lat.join_all(below) != p {
            ok = false;
            report.note("element is not the join of the principal annihilators below it");
            report.witness(Witness::ideal(ring, "I", analysis.ideal(k)));
        }
    }
    report.note(format!(
        "{n} right annihilator ideals among {} ideals; {} join/meet pairs",
        analysis.ideal_count(),
        n * n
    ));
    report.conclude(ok)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FrameOptions {
    pub seed: u64,
    /// Run on non-semiprime rings too; the verdict stays hypothesis-not-met.
    pub exploratory: bool,
}

/// First `(J, A)` violating `J ∧ ⋁A = ⋁(J ∧ a)`, or the number of subsets checked.
fn distributive_sweep(
    lat: &AnnihilatorLattice,
    subsets: &[Vec<usize>],
) -> std::result::Result<usize, (usize, Vec<usize>)> {
    let n = lat.len();
    let bad = (0..n).into_par_iter().find_map_first(|j| {
        subsets.iter().find_map(|a| {
            let lhs = lat.meet(j, lat.join_all(a.iter().copied()));
            let rhs = lat.join_all(a.iter().map(|&x| lat.meet(j, x)));
            (lhs != rhs).then(|| (j, a.clone()))
        })
    });
    match bad {
        Some(b) => Err(b),
        None => Ok(n * subsets.len()),
    }
}

fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .map(|bits| (0..n).filter(|&i| bits >> i & 1 == 1).collect())
        .collect()
}

fn small_subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&l: &usize| l + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Frame law `J ∧ ⋁A = ⋁{J ∧ a : a ∈ A}` for every element `J` and subset `A`.
///
/// Exhaustive up to `frame_exhaustive_max` elements; beyond that, all subsets
/// of size at most 3 plus `frame_samples` random larger ones drawn from a
/// ChaCha8 stream seeded with `opts.seed`. Also runs the sum identity.
/// Requires a semiprime ring unless `opts.exploratory` is set.
pub fn verify_frame_law(analysis: &RingAnalysis, opts: FrameOptions) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let limits = analysis.limits();
    let mut report = VerificationReport::new(ring.spec(), FRAME_LAW_CHECK_ID);
    let semiprime = report.hypothesis("R is semiprime", analysis.is_semiprime());
    if !semiprime && !opts.exploratory {
        return Ok(report.conclude(false));
    }
    if !semiprime {
        report.note("exploratory run: the ring is not semiprime");
    }
    let lat = AnnihilatorLattice::build(analysis)?;
    let n = lat.len();
    let subsets = if n <= limits.frame_exhaustive_max {
        report.note(format!("exhaustive: all 2^{n} subsets"));
        all_subsets(n)
    } else {
        report.seed = Some(opts.seed);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut s = small_subsets(n, SMALL_SUBSET_MAX);
        for _ in 0..limits.frame_samples {
            let k = rng.gen_range(SMALL_SUBSET_MAX + 1..=n);
            let mut pick = sample(&mut rng, n, k).into_vec();
            pick.sort_unstable();
            s.push(pick);
        }
        report.note(format!(
            "sampled: all subsets of size ≤ {SMALL_SUBSET_MAX} plus {} random larger subsets",
            limits.frame_samples
        ));
        s
    };
    let mut ok = match distributive_sweep(&lat, &subsets) {
        Ok(count) => {
            report.note(format!("{count} (J, A) pairs satisfy the distributive law"));
            true
        }
        Err((j, a)) => {
            report.note("distributive law fails");
            report.witness(Witness::ideal(ring, "J", analysis.ideal(lat.ideal_index(j))));
            for p in a {
                report.witness(Witness::ideal(ring, "A-member", analysis.ideal(lat.ideal_index(p))));
            }
            false
        }
    };
    ok &= sum_identity_sweep(analysis, &lat, &mut report);
    if !semiprime {
        report.note(format!(
            "exploratory result: the laws {} on this ring",
            if ok { "hold" } else { "fail" }
        ));
    }
    Ok(report.conclude(ok))
}

/// Distinct families of 1..=max ideal indices.
fn ideal_families(count: usize, max: usize) -> Vec<Vec<usize>> {
    small_subsets(count, max)
        .into_iter()
        .filter(|f| !f.is_empty())
        .collect()
}

/// `J ∩ r(l(Σ I_α)) = r(l(Σ (I_α ∩ J)))` over annihilator `J` and families of
/// up to `sum_family_max` arbitrary ideals. Returns whether it held.
fn sum_identity_sweep(analysis: &RingAnalysis, lat: &AnnihilatorLattice, report: &mut VerificationReport) -> bool {
    let ring = analysis.ring();
    let families = ideal_families(analysis.ideal_count(), analysis.limits().sum_family_max);
    let sum_all = |ks: &mut dyn Iterator<Item = usize>| {
        ks.fold(analysis.lattice().zero_index(), |acc, k| analysis.sum_index(acc, k))
    };
    let bad = (0..lat.len()).into_par_iter().find_map_first(|p| {
        let j = lat.ideal_index(p);
        families.iter().find_map(|f| {
            let lhs = analysis.meet_index(j, analysis.closure_index(sum_all(&mut f.iter().copied())));
            let rhs = analysis.closure_index(sum_all(&mut f.iter().map(|&i| analysis.meet_index(i, j))));
            (lhs != rhs).then(|| (j, f.clone()))
        })
    });
    match bad {
        None => {
            report.note(format!(
                "sum identity holds for {} annihilator ideals × {} families of ≤ {} ideals",
                lat.len(),
                families.len(),
                analysis.limits().sum_family_max
            ));
            true
        }
        Some((j, f)) => {
            report.note("sum identity fails");
            report.witness(Witness::ideal(ring, "J", analysis.ideal(j)));
            for i in f {
                report.witness(Witness::ideal(ring, "family-member", analysis.ideal(i)));
            }
            false
        }
    }
}

/// The sum identity on its own, gated on semiprimeness.
pub fn verify_sum_identity(analysis: &RingAnalysis) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(analysis.ring().spec(), SUM_IDENTITY_CHECK_ID);
    if !report.hypothesis("R is semiprime", analysis.is_semiprime()) {
        return Ok(report.conclude(false));
    }
    let lat = AnnihilatorLattice::build(analysis)?;
    let ok = sum_identity_sweep(analysis, &lat, &mut report);
    Ok(report.conclude(ok))
}

/// Elements `a_1..a_k` of the ideal at position `p` with `I = ⋁ r(l(R a_j R))`.
///
/// Greedy in index order with the identity tried first, so `R` decomposes
/// as `{1}` and `{0}` as the empty set. The result is checked before it is
/// returned.
pub fn compact_decomposition(analysis: &RingAnalysis, lat: &AnnihilatorLattice, p: usize) -> Result<Vec<Elem>> {
    let ring = analysis.ring();
    let ideal: &ElementSubset = analysis.ideal(lat.ideal_index(p));
    let order = std::iter::once(ring.one()).chain(ring.elements().filter(|&e| e != ring.one()));
    let mut current = lat.bottom();
    let mut picked = Vec::new();
    for a in order.filter(|&a| ideal.contains(a)) {
        if current == p {
            break;
        }
        let next = lat.join(current, lat.principal_ann(a));
        if next != current {
            current = next;
            picked.push(a);
        }
    }
    if current != p {
        return Err(Error::Consistency(
            "principal annihilators do not reconstruct the element".into(),
        ));
    }
    Ok(picked)
}

/// Principal decomposition of every lattice element, plus `R = r(l(R1R))`.
pub fn verify_compact_decomposition(analysis: &RingAnalysis) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), COMPACT_CHECK_ID);
    if !report.hypothesis("R is semiprime", analysis.is_semiprime()) {
        return Ok(report.conclude(false));
    }
    let lat = AnnihilatorLattice::build(analysis)?;
    let mut ok = lat.principal_ann(ring.one()) == lat.top();
    if !ok {
        report.note("r(l(R1R)) is not R");
    }
    let mut widest = 0;
    for p in 0..lat.len() {
        match compact_decomposition(analysis, &lat, p) {
            Ok(d) => {
                let inside = d.iter().all(|&a| lat.leq(lat.principal_ann(a), p));
                if !inside {
                    ok = false;
                    report.witness(Witness::ideal(ring, "I", analysis.ideal(lat.ideal_index(p))));
                }
                widest = widest.max(d.len());
            }
            Err(e) => {
                ok = false;
                report.note(e.to_string());
                report.witness(Witness::ideal(ring, "I", analysis.ideal(lat.ideal_index(p))));
            }
        }
    }
    report.note(format!(
        "{} elements decomposed; at most {widest} principal annihilators needed",
        lat.len()
    ));
    report.note("in a finite lattice every element is compact; the check verifies the decompositions themselves");
    Ok(report.conclude(ok))
}

/// `l(RaRbR) = l(RabR)` over all pairs, diagonal pairs first.
///
/// Returns the first failing pair.
pub fn coherence_violation(analysis: &RingAnalysis) -> Option<(Elem, Elem)> {
    let ring = analysis.ring();
    let mut principal: Vec<usize> = ring.elements().map(|a| analysis.principal_index(a)).collect();
    let mut distinct = principal.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let slot = |k: usize| distinct.binary_search(&k).expect("principal index recorded");
    let products: Vec<Vec<usize>> = distinct
        .par_iter()
        .map(|&i| {
            distinct
                .iter()
                .map(|&j| analysis.left_ann_index(analysis.product_index(i, j)))
                .collect()
        })
        .collect();
    for p in principal.iter_mut() {
        *p = slot(*p);
    }
    let holds = |a: Elem, b: Elem| {
        products[principal[a]][principal[b]] == analysis.left_ann_index(analysis.principal_index(ring.mul(a, b)))
    };
    if let Some(a) = ring.elements().find(|&a| !holds(a, a)) {
        return Some((a, a));
    }
    ring.elements()
        .into_par_iter()
        .find_map_first(|a| ring.elements().find(|&b| !holds(a, b)).map(|b| (a, b)))
}

/// First pair with `r(l(RaR)) ∩ r(l(RbR)) ≠ r(l(RabR))`.
pub fn meet_formula_violation(analysis: &RingAnalysis) -> Option<(Elem, Elem)> {
    let ring = analysis.ring();
    let closure: Vec<usize> = ring.elements().map(|a| analysis.principal_closure_index(a)).collect();
    let mut distinct = closure.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let meets: std::collections::HashMap<(usize, usize), usize> = distinct
        .iter()
        .flat_map(|&i| distinct.iter().map(move |&j| (i, j)))
        .map(|(i, j)| ((i, j), analysis.meet_index(i, j)))
        .collect();
    ring.elements().into_par_iter().find_map_first(|a| {
        ring.elements()
            .find(|&b| meets[&(closure[a], closure[b])] != closure[ring.mul(a, b)])
            .map(|b| (a, b))
    })
}

/// Reducedness criterion and the principal meet formula.
///
/// On semiprime rings `l(RaRbR) = l(RabR)` holds for all pairs exactly when
/// the ring is reduced; on reduced rings `r(l(RaR)) ∩ r(l(RbR)) = r(l(RabR))`.
/// Other rings only report whether the identity holds.
pub fn verify_coherence(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), COHERENCE_CHECK_ID);
    let semiprime = analysis.is_semiprime();
    let reduced = analysis.is_reduced();
    let violation = coherence_violation(analysis);
    let identity = violation.is_none();
    report.witness(Witness::value("identity-holds", identity));
    report.witness(Witness::value("reduced", reduced));
    report.witness(Witness::value("semiprime", semiprime));
    if let Some((a, b)) = violation {
        report.witness(Witness::element(ring, "a", a));
        report.witness(Witness::element(ring, "b", b));
    }
    let mut ok = true;
    if semiprime && identity != reduced {
        ok = false;
        report.note("on a semiprime ring the identity should hold exactly when the ring is reduced");
    }
    if reduced {
        if let Some((a, b)) = meet_formula_violation(analysis) {
            ok = false;
            report.note("r(l(RaR)) ∩ r(l(RbR)) differs from r(l(RabR))");
            report.witness(Witness::element(ring, "meet-a", a));
            report.witness(Witness::element(ring, "meet-b", b));
        } else {
            report.note("r(l(RaR)) ∩ r(l(RbR)) = r(l(RabR)) for all pairs");
        }
    }
    report.note(format!(
        "l(RaRbR) = l(RabR) {} over all {} pairs",
        if identity { "holds" } else { "fails" },
        ring.size() * ring.size()
    ));
    report.conclude(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::report::Verdict;
    use crate::ring::RingBuilder;

    fn analyze(spec: &str) -> RingAnalysis {
        RingAnalysis::new(RingBuilder::default().parse(spec).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn zmod6_lattice_is_a_diamond() {
        let a = analyze("Z6");
        let lat = AnnihilatorLattice::build(&a).unwrap();
        assert_eq!(lat.len(), 4);
        assert_eq!(lat.covers().len(), 4);
        let dot = lat.to_dot(&a);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn zmod12_every_ideal_is_an_annihilator() {
        let a = analyze("Z12");
        let lat = AnnihilatorLattice::build(&a).unwrap();
        assert_eq!(lat.len(), 6);
        // divisor covers of {1,2,3,4,6,12}: 1-2,1-3,2-4,2-6,3-6,4-12,6-12
        assert_eq!(lat.covers().len(), 7);
        let z2 = AnnihilatorLattice::build(&analyze("Z2")).unwrap();
        assert_eq!((z2.len(), z2.covers().len()), (2, 1));
    }

    #[test]
    fn frame_law_gates() {
        let opts = FrameOptions::default();
        assert_eq!(verify_frame_law(&analyze("Z6"), opts).unwrap().verdict, Verdict::Pass);
        assert_eq!(
            verify_frame_law(&analyze("Z2xZ2"), opts).unwrap().verdict,
            Verdict::Pass
        );
        let z12 = verify_frame_law(&analyze("Z12"), opts).unwrap();
        assert_eq!(z12.verdict, Verdict::HypothesisNotMet);
        let explore = verify_frame_law(
            &analyze("Z12"),
            FrameOptions {
                seed: 0,
                exploratory: true,
            },
        )
        .unwrap();
        assert_eq!(explore.verdict, Verdict::HypothesisNotMet);
        assert!(explore.notes.iter().any(|n| n.starts_with("exploratory result")));
    }

    #[test]
    fn decompositions() {
        let a = analyze("Z6");
        let lat = AnnihilatorLattice::build(&a).unwrap();
        assert_eq!(
            compact_decomposition(&a, &lat, lat.bottom()).unwrap(),
            Vec::<Elem>::new()
        );
        assert_eq!(compact_decomposition(&a, &lat, lat.top()).unwrap(), vec![1]);
        let two = lat
            .position_of(a.index_of(&a.ring().subset_of(&[0, 2, 4])).unwrap())
            .unwrap();
        assert_eq!(compact_decomposition(&a, &lat, two).unwrap(), vec![2]);
    }

    #[test]
    fn coherence_on_matrix_ring() {
        let a = analyze("M2(Z2)");
        let e12 = a.ring().parse_element("[[0,1],[0,0]]").unwrap();
        assert_eq!(coherence_violation(&a), Some((e12, e12)));
        assert_eq!(verify_coherence(&a).verdict, Verdict::Pass);
        assert_eq!(coherence_violation(&analyze("Z6")), None);
        assert_eq!(coherence_violation(&analyze("Z2")), None);
    }

    #[test]
    fn lattice_checks_on_small_rings() {
        for spec in ["Z2", "Z6", "Z12", "Z2xZ4", "M2(Z2)", "T2(Z2)", "GT(4,2,2)"] {
            let a = analyze(spec);
            assert_eq!(verify_annihilator_lattice(&a).verdict, Verdict::Pass, "{spec}");
            assert_eq!(verify_coherence(&a).verdict, Verdict::Pass, "{spec}");
        }
    }
}
