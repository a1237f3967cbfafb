//! Left and right annihilators and the annihilator-ideal operators built on them.
//!
//! `l(S) = {x : xS = 0}` and `r(S) = {x : Sx = 0}`. Both only depend on the
//! additive span of `S`, so they are computed against a generating set of it.

use serde::{Deserialize, Serialize};

use crate::analysis::RingAnalysis;
use crate::error::{Error, Result};
use crate::ideal::principal_ideal;
use crate::report::{VerificationReport, Witness};
use crate::ring::{Elem, FiniteRing};
use crate::subset::ElementSubset;

pub const SA_CHECK_ID: &str = "sa-ring";

/// `l(S)`.
pub fn left_ann(ring: &FiniteRing, s: &ElementSubset) -> ElementSubset {
    let gens = ring.span_generators(s);
    ElementSubset::from_predicate(ring.size(), |x| gens.iter().all(|&g| ring.mul(x, g) == ring.zero()))
}

/// `r(S)`.
pub fn right_ann(ring: &FiniteRing, s: &ElementSubset) -> ElementSubset {
    let gens = ring.span_generators(s);
    ElementSubset::from_predicate(ring.size(), |x| gens.iter().all(|&g| ring.mul(g, x) == ring.zero()))
}

/// `r(l(S))`.
pub fn double_ann(ring: &FiniteRing, s: &ElementSubset) -> ElementSubset {
    right_ann(ring, &left_ann(ring, s))
}

/// An ideal together with `I_A = r(l(I))`, the smallest right annihilator ideal containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnihilatorClosurePair {
    pub ideal: ElementSubset,
    pub closure: ElementSubset,
    pub is_fixed: bool,
}

/// `I_A`, cross-checked against the join `⋁_{a∈I} r(l(RaR))` taken in the annihilator lattice.
pub fn closure_a(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<AnnihilatorClosurePair> {
    let k = analysis.require_ideal(ideal)?;
    let closure = analysis.ideal(analysis.closure_index(k)).clone();
    let join = principal_join(analysis, ideal.iter());
    if join != closure {
        return Err(Error::Consistency(format!(
            "r(l(I)) differs from the join of r(l(RaR)) over I for ideal {}",
            ideal.to_hex()
        )));
    }
    Ok(AnnihilatorClosurePair {
        is_fixed: &closure == ideal,
        ideal: ideal.clone(),
        closure,
    })
}

/// Join of the principal annihilator ideals `r(l(RaR))` in the annihilator lattice,
/// `r(∩ l(r(l(RaR))))`; the bottom `{0}` for an empty family.
pub fn principal_join(analysis: &RingAnalysis, elems: impl IntoIterator<Item = Elem>) -> ElementSubset {
    let ring = analysis.ring();
    let mut meet = ring.full_subset();
    for a in elems {
        let k = analysis.principal_closure_index(a);
        meet.intersect_with(analysis.ideal(analysis.left_ann_index(k)));
    }
    right_ann(ring, &meet)
}

/// Sum of the principal annihilator ideals `r(l(RaR))`, `a ∈ elems`.
pub fn principal_sum(analysis: &RingAnalysis, elems: impl IntoIterator<Item = Elem>) -> ElementSubset {
    let ring = analysis.ring();
    let mut seen = vec![false; analysis.ideal_count()];
    let mut members = Vec::new();
    for a in elems {
        let k = analysis.principal_closure_index(a);
        if !seen[k] {
            seen[k] = true;
            members.extend(ring.span_generators(analysis.ideal(k)));
        }
    }
    ring.additive_span(members)
}

pub fn is_right_annihilator_ideal(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<bool> {
    let k = analysis.require_ideal(ideal)?;
    Ok(analysis.is_annihilator_index(k))
}

/// First ideal pair `(I, J)` for which `r(I) + r(J)` is not fixed by `r∘l`.
pub fn first_sa_violation(analysis: &RingAnalysis) -> Option<(usize, usize)> {
    let n = analysis.ideal_count();
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).find(|&(i, j)| {
        let x = analysis.sum_index(analysis.right_ann_index(i), analysis.right_ann_index(j));
        !analysis.is_annihilator_index(x)
    })
}

pub fn is_sa(analysis: &RingAnalysis) -> bool {
    first_sa_violation(analysis).is_none()
}

/// Whether `r(I) + r(J)` is of the form `r(K)` for every ideal pair.
///
/// `X = r(I) + r(J)` is some `r(K)` exactly when `r(l(X)) = X`, so `K = l(X)`
/// is the only candidate that needs testing.
pub fn is_sa_ring(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), SA_CHECK_ID);
    match first_sa_violation(analysis) {
        None => {
            report.note(format!(
                "r(I)+r(J) is a right annihilator for all {} ideal pairs",
                analysis.ideal_count() * (analysis.ideal_count() + 1) / 2
            ));
            report.conclude(true)
        }
        Some((i, j)) => {
            report.witness(Witness::ideal(ring, "I", analysis.ideal(i)));
            report.witness(Witness::ideal(ring, "J", analysis.ideal(j)));
            let x = analysis.sum_index(analysis.right_ann_index(i), analysis.right_ann_index(j));
            report.witness(Witness::ideal(ring, "r(I)+r(J)", analysis.ideal(x)));
            report.note("r(I)+r(J) is not fixed by r∘l");
            report.conclude(false)
        }
    }
}

/// Sum of all right annihilator ideals contained in the ideal at index `k`.
pub fn sum_of_contained_annihilators(analysis: &RingAnalysis, k: usize) -> ElementSubset {
    let ring = analysis.ring();
    let mut members = Vec::new();
    for j in analysis.annihilator_indices() {
        if analysis.lattice().leq(j, k) {
            members.extend(ring.span_generators(analysis.ideal(j)));
        }
    }
    ring.additive_span(members)
}

/// `I^A = Σ_{r(l(RaR)) ⊆ I} r(l(RaR))`, the largest right annihilator ideal inside `I`.
///
/// Only defined on SA rings. The result is checked to be an annihilator
/// ideal inside `I` that contains every annihilator ideal inside `I`.
pub fn largest_contained_annihilator(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<ElementSubset> {
    let k = analysis.require_ideal(ideal)?;
    if !is_sa(analysis) {
        return Err(Error::HypothesisNotMet("ring is not an SA-ring".into()));
    }
    let out = principal_sum(
        analysis,
        analysis
            .ring()
            .elements()
            .filter(|&a| analysis.principal_closure(a).is_subset(ideal)),
    );
    let idx = analysis
        .index_of(&out)
        .ok_or_else(|| Error::Consistency("sum of principal annihilators is not an ideal".into()))?;
    if !analysis.is_annihilator_index(idx) || !out.is_subset(ideal) {
        return Err(Error::Consistency(format!(
            "largest contained annihilator of {} is not an annihilator ideal inside it",
            ideal.to_hex()
        )));
    }
    if let Some(j) = analysis
        .annihilator_indices()
        .into_iter()
        .find(|&j| analysis.lattice().leq(j, k) && !analysis.lattice().leq(j, idx))
    {
        return Err(Error::Consistency(format!(
            "annihilator ideal {} inside {} is missed",
            analysis.ideal(j).to_hex(),
            ideal.to_hex()
        )));
    }
    Ok(out)
}

/// Whether `I ∩ J ≠ 0` for every nonzero ideal `J`.
///
/// On semiprime rings the answer is cross-checked against `l(I) = 0`.
pub fn is_essential_ideal(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<bool> {
    let k = analysis.require_ideal(ideal)?;
    let essential = (1..analysis.ideal_count()).all(|j| analysis.ideal(analysis.meet_index(k, j)).count() > 1);
    if analysis.is_semiprime() {
        let l_zero = analysis.left_ann_index(k) == analysis.lattice().zero_index();
        if l_zero != essential {
            return Err(Error::Consistency(format!(
                "essentiality of {} disagrees with l(I) = 0 in a semiprime ring",
                ideal.to_hex()
            )));
        }
    }
    Ok(essential)
}

/// An idempotent `e` with `ReR = I`, if one exists; the smallest such in index order.
pub fn idempotent_generator(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<Option<Elem>> {
    let k = analysis.require_ideal(ideal)?;
    let ring = analysis.ring();
    Ok(ideal
        .iter()
        .find(|&e| ring.is_idempotent(e) && analysis.principal_index(e) == k))
}

pub fn is_idempotent_generated(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<bool> {
    Ok(idempotent_generator(analysis, ideal)?.is_some())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `Re = eRe`.
    Left,
    /// `eR = eRe`.
    Right,
}

pub fn is_semicentral(ring: &FiniteRing, e: Elem, side: Side) -> Result<bool> {
    if e >= ring.size() {
        return Err(Error::InvalidArgument(format!("element {e} out of range")));
    }
    if !ring.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let one_sided = ElementSubset::from_elements(
        ring.size(),
        ring.elements().map(|x| match side {
            Side::Left => ring.mul(x, e),
            Side::Right => ring.mul(e, x),
        }),
    );
    let corner = ElementSubset::from_elements(ring.size(), ring.elements().map(|x| ring.mul(ring.mul(e, x), e)));
    Ok(one_sided == corner)
}

/// `l(RaR)` computed directly from the ring, without an analysis.
pub fn principal_left_ann(ring: &FiniteRing, a: Elem) -> ElementSubset {
    left_ann(ring, &principal_ideal(ring, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::ideal_generators;
    use crate::limits::Limits;
    use crate::ring::RingBuilder;

    fn analyze(spec: &str) -> RingAnalysis {
        let r = RingBuilder::default().parse(spec).unwrap();
        RingAnalysis::new(r, &Limits::default()).unwrap()
    }

    #[test]
    fn zmod12_annihilators() {
        let r = RingBuilder::default().zmod(12).unwrap();
        assert_eq!(left_ann(&r, &r.subset_of(&[0, 4, 8])).to_vec(), vec![0, 3, 6, 9]);
        assert_eq!(right_ann(&r, &r.subset_of(&[0, 3, 6, 9])).to_vec(), vec![0, 4, 8]);
        assert!(left_ann(&r, &r.zero_subset()).is_full());
        assert_eq!(right_ann(&r, &r.full_subset()).to_vec(), vec![0]);
    }

    #[test]
    fn closure_examples() {
        let a = analyze("Z12");
        let four = a.ring().subset_of(&[0, 4, 8]);
        let pair = closure_a(&a, &four).unwrap();
        assert!(pair.is_fixed);
        assert!(is_right_annihilator_ideal(&a, &a.ring().subset_of(&[0, 6])).unwrap());

        let t = analyze("T2(Z2)");
        let e12 = t.ring().parse_element("[[0,1],[0,0]]").unwrap();
        let strict = t.ring().subset_of(&[0, e12]);
        let pair = closure_a(&t, &strict).unwrap();
        assert!(!pair.is_fixed);
        let top_row: Vec<String> = pair.closure.iter().map(|e| t.ring().format_element(e)).collect();
        assert_eq!(
            top_row,
            ["[[0,0],[0,0]]", "[[1,0],[0,0]]", "[[0,1],[0,0]]", "[[1,1],[0,0]]"]
        );
        assert!(!is_right_annihilator_ideal(&t, &strict).unwrap());
        assert!(is_right_annihilator_ideal(&t, &t.ring().full_subset()).unwrap());
        assert!(closure_a(&t, &t.ring().zero_subset()).unwrap().is_fixed);
    }

    #[test]
    fn sa_examples() {
        for spec in ["Z12", "Z6", "Z2"] {
            assert_eq!(
                is_sa_ring(&analyze(spec)).verdict,
                crate::report::Verdict::Pass,
                "{spec}"
            );
        }
    }

    #[test]
    fn largest_contained() {
        let a = analyze("Z12");
        let four = a.ring().subset_of(&[0, 4, 8]);
        assert_eq!(largest_contained_annihilator(&a, &four).unwrap(), four);
        assert_eq!(
            largest_contained_annihilator(&a, &a.ring().zero_subset())
                .unwrap()
                .to_vec(),
            vec![0]
        );
        assert!(largest_contained_annihilator(&a, &a.ring().full_subset())
            .unwrap()
            .is_full());
    }

    #[test]
    fn essential_and_idempotent() {
        let z4 = analyze("Z4");
        let two = z4.ring().subset_of(&[0, 2]);
        assert!(is_essential_ideal(&z4, &two).unwrap());
        assert!(!is_idempotent_generated(&z4, &two).unwrap());
        let z6 = analyze("Z6");
        let two6 = z6.ring().subset_of(&[0, 2, 4]);
        assert!(!is_essential_ideal(&z6, &two6).unwrap());
        assert_eq!(idempotent_generator(&z6, &two6).unwrap(), Some(4));
        assert!(is_essential_ideal(&z6, &z6.ring().full_subset()).unwrap());
        assert_eq!(idempotent_generator(&z6, &z6.ring().full_subset()).unwrap(), Some(1));
        assert_eq!(ideal_generators(z6.ring(), &two6), vec![2]);
    }

    #[test]
    fn semicentral_idempotents() {
        let r = RingBuilder::default().parse("T2(Z2)").unwrap();
        let e11 = r.parse_element("[[1,0],[0,0]]").unwrap();
        let e22 = r.parse_element("[[0,0],[0,1]]").unwrap();
        // R·E11 is the (1,1) corner, E11·R the whole top row.
        assert!(is_semicentral(&r, e11, Side::Left).unwrap());
        assert!(!is_semicentral(&r, e11, Side::Right).unwrap());
        assert!(!is_semicentral(&r, e22, Side::Left).unwrap());
        assert!(is_semicentral(&r, e22, Side::Right).unwrap());
        assert_eq!(is_semicentral(&r, 2, Side::Left), Err(Error::NotIdempotent(2)));
        let z6 = RingBuilder::default().zmod(6).unwrap();
        for e in [0, 1, 3, 4] {
            assert!(is_semicentral(&z6, e, Side::Left).unwrap());
            assert!(is_semicentral(&z6, e, Side::Right).unwrap());
        }
    }
}
