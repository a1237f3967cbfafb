//! z°, z_n°, sz° and right d-ideal classifiers and the checks relating them.
//!
//! Witness convention: classifiers report the first violating element in
//! index order, except that the zero element is tried last. `P_0 = P(R)` is
//! contained in every `P_a`, so a violation at 0 implies one at every
//! nonzero member and a nonzero witness is always available unless the
//! ideal is `{0}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::analysis::RingAnalysis;
use crate::error::{Error, Result};
use crate::ideal::ideal_generators;
use crate::report::{VerificationReport, Witness};
use crate::ring::{Elem, FiniteRing};
use crate::subset::ElementSubset;

pub const Z0_CHECK_ID: &str = "z0";
pub const ZN0_CHECK_ID: &str = "zn0";
pub const SZ0_CHECK_ID: &str = "sz0";
pub const D_IDEAL_CHECK_ID: &str = "d-ideal";
pub const CLASSES_CHECK_ID: &str = "z0-classes";
pub const D_IMPLIES_Z0_CHECK_ID: &str = "d-ideals-are-z0";
pub const COINCIDENCE_CHECK_ID: &str = "z0-d-coincidence";
pub const REDUCED_CHECK_ID: &str = "reduced-identities";
pub const TRANSFER_CHECK_ID: &str = "annihilator-transfer";
pub const PRIME_INTERSECTION_CHECK_ID: &str = "prime-intersection-z0";

fn members_zero_last<'a>(ring: &FiniteRing, ideal: &'a ElementSubset) -> impl Iterator<Item = Elem> + 'a {
    let z = ring.zero();
    ideal.iter().filter(move |&a| a != z).chain(std::iter::once(z))
}

pub(crate) fn first_z0_violation(analysis: &RingAnalysis, ideal: &ElementSubset) -> Option<Elem> {
    members_zero_last(analysis.ring(), ideal).find(|&a| !analysis.p_of_element(a).is_subset(ideal))
}

/// A member `a` with `P_a ⊄ I`, if any.
pub fn z0_violation(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<Option<Elem>> {
    analysis.require_ideal(ideal)?;
    Ok(first_z0_violation(analysis, ideal))
}

pub fn is_z0_ideal(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<bool> {
    Ok(z0_violation(analysis, ideal)?.is_none())
}

pub(crate) fn is_z0_index(analysis: &RingAnalysis, k: usize) -> bool {
    first_z0_violation(analysis, analysis.ideal(k)).is_none()
}

/// A subset `F ⊆ I` with `|F| ≤ n` and `P_F ⊄ I`, if any.
///
/// `P_F` only depends on which minimal primes contain all of `F`, so the
/// search runs over the reachable intersections of member signatures rather
/// than over subsets: round `k` holds every signature meet achievable with
/// `k` members. The work is bounded by `zn_budget`.
pub fn zn0_violation(analysis: &RingAnalysis, ideal: &ElementSubset, n: usize) -> Result<Option<Vec<Elem>>> {
    analysis.require_ideal(ideal)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if let Some(a) = first_z0_violation(analysis, ideal) {
        return Ok(Some(vec![a]));
    }
    let ring = analysis.ring();
    let mut reps: BTreeMap<u64, Elem> = BTreeMap::new();
    for a in members_zero_last(ring, ideal) {
        reps.entry(analysis.signature(a)).or_insert(a);
    }
    let mut seen: BTreeMap<u64, Vec<Elem>> = reps.iter().map(|(&m, &a)| (m, vec![a])).collect();
    let mut frontier: Vec<u64> = seen.keys().copied().collect();
    let budget = analysis.limits().zn_budget;
    let mut work: u128 = 0;
    for _round in 2..=n.min(ideal.count()) {
        work += (frontier.len() as u128) * (reps.len() as u128);
        if work > budget {
            return Err(Error::BudgetExceeded {
                what: "z_n° signature search".into(),
                needed: work,
                budget,
            });
        }
        let mut next = Vec::new();
        for &m in &frontier {
            for (&s, &a) in &reps {
                let meet = m & s;
                if seen.contains_key(&meet) {
                    continue;
                }
                let mut set = seen[&m].clone();
                set.push(a);
                set.sort_unstable();
                seen.insert(meet, set);
                next.push(meet);
            }
        }
        next.sort_unstable();
        if let Some(&bad) = next.iter().find(|&&m| !analysis.p_of_mask(m).is_subset(ideal)) {
            return Ok(Some(seen[&bad].clone()));
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

pub fn is_zn0_ideal(analysis: &RingAnalysis, ideal: &ElementSubset, n: usize) -> Result<bool> {
    Ok(zn0_violation(analysis, ideal, n)?.is_none())
}

/// z_n° for every n; decided at `n = |I|` since no subset of `I` is larger.
pub fn is_sz0_ideal(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<bool> {
    is_zn0_ideal(analysis, ideal, ideal.count())
}

/// Every member `a` with `r(l(RaR)) ⊄ I`, in index order.
pub fn d_violations(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<Vec<Elem>> {
    analysis.require_ideal(ideal)?;
    Ok(ideal
        .iter()
        .filter(|&a| !analysis.principal_closure(a).is_subset(ideal))
        .collect())
}

pub(crate) fn first_d_violation(analysis: &RingAnalysis, ideal: &ElementSubset) -> Option<Elem> {
    ideal.iter().find(|&a| !analysis.principal_closure(a).is_subset(ideal))
}

/// The first member `a` with `r(l(RaR)) ⊄ I`, if any.
pub fn d_violation(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<Option<Elem>> {
    analysis.require_ideal(ideal)?;
    Ok(first_d_violation(analysis, ideal))
}

pub fn is_right_d_ideal(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<bool> {
    Ok(d_violation(analysis, ideal)?.is_none())
}

pub(crate) fn is_d_index(analysis: &RingAnalysis, k: usize) -> bool {
    first_d_violation(analysis, analysis.ideal(k)).is_none()
}

/// All classifier verdicts for one ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealClassification {
    pub ring_spec: String,
    pub ideal: Witness,
    pub is_z0: bool,
    /// `n ↦ is z_n°` for `1 ≤ n ≤ profile_cap`.
    pub zn0_profile: BTreeMap<usize, bool>,
    pub is_sz0: bool,
    pub is_right_d: bool,
    pub is_right_annihilator: bool,
    pub is_prime: bool,
    pub witnesses: Vec<Witness>,
}

pub fn classify_ideal(analysis: &RingAnalysis, ideal: &ElementSubset) -> Result<IdealClassification> {
    let k = analysis.require_ideal(ideal)?;
    let ring = analysis.ring();
    let mut witnesses = Vec::new();
    let z0 = first_z0_violation(analysis, ideal);
    if let Some(a) = z0 {
        witnesses.push(Witness::element(ring, "z0-violation", a));
        witnesses.push(Witness::ideal(ring, "P_a", analysis.p_of_element(a)));
    }
    let mut zn0_profile = BTreeMap::new();
    for n in 1..=analysis.limits().profile_cap {
        zn0_profile.insert(n, is_zn0_ideal(analysis, ideal, n)?);
    }
    let sz0 = zn0_violation(analysis, ideal, ideal.count())?;
    if let (None, Some(f)) = (z0, &sz0) {
        witnesses.push(Witness::set("sz0-violation", &ring.subset_of(f)));
    }
    let d = first_d_violation(analysis, ideal);
    if let Some(a) = d {
        witnesses.push(Witness::element(ring, "d-violation", a));
        witnesses.push(Witness::ideal(ring, "r(l(RaR))", analysis.principal_closure(a)));
    }
    Ok(IdealClassification {
        ring_spec: ring.spec(),
        ideal: Witness::ideal(ring, "ideal", ideal),
        is_z0: z0.is_none(),
        zn0_profile,
        is_sz0: sz0.is_none(),
        is_right_d: d.is_none(),
        is_right_annihilator: analysis.is_annihilator_index(k),
        is_prime: analysis.is_prime_index(k),
        witnesses,
    })
}

/// Report for a single classifier applied to one ideal: pass when the ideal has the property.
pub fn classifier_report(
    analysis: &RingAnalysis,
    check_id: &str,
    ideal: &ElementSubset,
    n: Option<usize>,
) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), check_id);
    report.witness(Witness::ideal(ring, "ideal", ideal));
    let holds = match check_id {
        Z0_CHECK_ID => match z0_violation(analysis, ideal)? {
            None => true,
            Some(a) => {
                report.witness(Witness::element(ring, "a", a));
                report.witness(Witness::ideal(ring, "P_a", analysis.p_of_element(a)));
                report.note("P_a is not contained in the ideal");
                false
            }
        },
        ZN0_CHECK_ID | SZ0_CHECK_ID => {
            let n = if check_id == SZ0_CHECK_ID {
                ideal.count()
            } else {
                n.unwrap_or(1)
            };
            report.note(format!("n = {n}"));
            match zn0_violation(analysis, ideal, n)? {
                None => true,
                Some(f) => {
                    report.witness(Witness::set("F", &ring.subset_of(&f)));
                    for &a in &f {
                        report.witness(Witness::element(ring, "F-member", a));
                    }
                    report.witness(Witness::ideal(ring, "P_F", &analysis.p_of(f.iter().copied())));
                    report.note("P_F is not contained in the ideal");
                    false
                }
            }
        }
        D_IDEAL_CHECK_ID => match d_violation(analysis, ideal)? {
            None => true,
            Some(a) => {
                report.witness(Witness::element(ring, "a", a));
                report.witness(Witness::ideal(ring, "r(l(RaR))", analysis.principal_closure(a)));
                report.note("r(l(RaR)) is not contained in the ideal");
                false
            }
        },
        other => return Err(Error::InvalidArgument(format!("unknown classifier {other}"))),
    };
    Ok(report.conclude(holds))
}

fn class(analysis: &RingAnalysis, pred: impl Fn(usize) -> bool) -> Vec<usize> {
    (0..analysis.ideal_count()).filter(|&k| pred(k)).collect()
}

fn ideal_list_witness(analysis: &RingAnalysis, report: &mut VerificationReport, role: &str, ks: &[usize]) {
    for &k in ks {
        report.witness(Witness::ideal(analysis.ring(), role, analysis.ideal(k)));
    }
}

/// Class-level facts about z°-ideals.
///
/// Minimal primes and `P(R)` are z°, `P(R)` lies in every z°-ideal, z° is
/// closed under pairwise intersection, the z_n° profile is antitone in n,
/// d-ideals are z° on semiprime rings and the two classes agree on reduced
/// rings. Also reports whether some ideal is z° but not sz°.
pub fn verify_z0_classes(analysis: &RingAnalysis) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), CLASSES_CHECK_ID);
    let z0: Vec<bool> = (0..analysis.ideal_count()).map(|k| is_z0_index(analysis, k)).collect();
    let d: Vec<bool> = (0..analysis.ideal_count()).map(|k| is_d_index(analysis, k)).collect();
    let mut ok = true;

    let bad_min: Vec<usize> = analysis
        .spectrum()
        .minimal_primes
        .iter()
        .copied()
        .filter(|&k| !z0[k])
        .collect();
    if !bad_min.is_empty() {
        ok = false;
        report.note("a minimal prime is not z°");
        ideal_list_witness(analysis, &mut report, "non-z0-minimal-prime", &bad_min);
    }

    let radical = analysis
        .index_of(analysis.prime_radical())
        .ok_or_else(|| Error::Consistency("prime radical is not an ideal".into()))?;
    if !z0[radical] {
        ok = false;
        report.note("P(R) is not z°");
    }
    if let Some(k) = (0..z0.len()).find(|&k| z0[k] && !analysis.lattice().leq(radical, k)) {
        ok = false;
        report.note("a z°-ideal misses P(R)");
        ideal_list_witness(analysis, &mut report, "z0-without-radical", &[k]);
    }

    let zs = class(analysis, |k| z0[k]);
    'outer: for (x, &i) in zs.iter().enumerate() {
        for &j in &zs[x + 1..] {
            if !z0[analysis.meet_index(i, j)] {
                ok = false;
                report.note("an intersection of z°-ideals is not z°");
                ideal_list_witness(analysis, &mut report, "z0-pair", &[i, j]);
                break 'outer;
            }
        }
    }

    let cap = analysis.limits().profile_cap;
    let mut z0_not_sz0 = None;
    for (k, &is_z0) in z0.iter().enumerate() {
        let ideal = analysis.ideal(k);
        let mut prev = true;
        for n in 1..=cap {
            let v = is_zn0_ideal(analysis, ideal, n)?;
            if n == 1 && v != is_z0 {
                ok = false;
                report.note("z_1° differs from z°");
                ideal_list_witness(analysis, &mut report, "z1-mismatch", &[k]);
            }
            if v && !prev {
                ok = false;
                report.note(format!("z_n° profile not antitone at n = {n}"));
                ideal_list_witness(analysis, &mut report, "non-antitone", &[k]);
            }
            prev = v;
        }
        if z0_not_sz0.is_none() && is_z0 && !is_sz0_ideal(analysis, ideal)? {
            z0_not_sz0 = Some(k);
        }
    }
    match z0_not_sz0 {
        Some(k) => {
            report.note("found a z°-ideal that is not sz°");
            ideal_list_witness(analysis, &mut report, "z0-not-sz0", &[k]);
        }
        None => report.note("every z°-ideal is sz° in this ring"),
    }

    if analysis.is_semiprime() {
        let bad = class(analysis, |k| d[k] && !z0[k]);
        if !bad.is_empty() {
            ok = false;
            report.note("semiprime ring has a d-ideal that is not z°");
            ideal_list_witness(analysis, &mut report, "d-not-z0", &bad);
        }
    }
    if analysis.is_reduced() {
        let bad = class(analysis, |k| d[k] != z0[k]);
        if !bad.is_empty() {
            ok = false;
            report.note("reduced ring where the d and z° classes differ");
            ideal_list_witness(analysis, &mut report, "class-mismatch", &bad);
        }
    }
    report.note(format!(
        "{} of {} ideals are z°, {} are right d-ideals",
        zs.len(),
        z0.len(),
        d.iter().filter(|v| **v).count()
    ));
    Ok(report.conclude(ok))
}

/// One representative element per (signature, `RaR`) class, in index order.
///
/// `P_a` depends only on the signature and `l(RaR)` only on `RaR`.
fn principal_classes(analysis: &RingAnalysis) -> Vec<Elem> {
    let mut seen = BTreeMap::new();
    for a in analysis.ring().elements() {
        seen.entry((analysis.signature(a), analysis.principal_index(a)))
            .or_insert(a);
    }
    let mut reps: Vec<Elem> = seen.into_values().collect();
    reps.sort_unstable();
    reps
}

/// The five equivalent conditions around "every right d-ideal is z°".
///
/// (1) `P_a ⊆ r(l(RaR))` for all a; (2) R semiprime; (3) `P_b ⊆ P_a` implies
/// `l(RaR) ⊆ l(RbR)`; (4) every right d-ideal is z°; (5) every right
/// annihilator ideal is z°. Passes when all five have the same truth value.
pub fn verify_d_ideals_are_z0(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), D_IMPLIES_Z0_CHECK_ID);
    let mut values = [true; 5];

    if let Some(a) = members_zero_last(ring, &ring.full_subset())
        .find(|&a| !analysis.p_of_element(a).is_subset(analysis.principal_closure(a)))
    {
        values[0] = false;
        report.witness(Witness::element(ring, "s1:a", a));
    }

    values[1] = analysis.is_semiprime();
    if !values[1] {
        report.witness(Witness::ideal(ring, "s2:P(R)", analysis.prime_radical()));
    }

    let reps = principal_classes(analysis);
    'outer: for &a in &reps {
        for &b in &reps {
            if analysis.p_of_element(b).is_subset(analysis.p_of_element(a))
                && !analysis.principal_left_ann(a).is_subset(analysis.principal_left_ann(b))
            {
                values[2] = false;
                report.witness(Witness::element(ring, "s3:a", a));
                report.witness(Witness::element(ring, "s3:b", b));
                break 'outer;
            }
        }
    }

    let d_not_z0 = class(analysis, |k| is_d_index(analysis, k) && !is_z0_index(analysis, k));
    values[3] = d_not_z0.is_empty();
    ideal_list_witness(analysis, &mut report, "s4:ideal", &d_not_z0);

    let ann_not_z0 = class(analysis, |k| {
        analysis.is_annihilator_index(k) && !is_z0_index(analysis, k)
    });
    values[4] = ann_not_z0.is_empty();
    ideal_list_witness(analysis, &mut report, "s5:ideal", &ann_not_z0);

    let labels = [
        "P_a ⊆ r(l(RaR)) for all a",
        "R is semiprime",
        "P_b ⊆ P_a implies l(RaR) ⊆ l(RbR)",
        "every right d-ideal is z°",
        "every right annihilator ideal is z°",
    ];
    for (i, (label, v)) in labels.iter().zip(values).enumerate() {
        report.note(format!("statement {}: {label}: {v}", i + 1));
        report.witness(Witness::value(format!("s{}", i + 1), v));
    }
    let agree = values.iter().all(|&v| v == values[0]);
    if !agree {
        report.note("statements disagree");
    }
    report.conclude(agree)
}

/// On semiprime rings: the z° and right d classes coincide iff `r(l(RaR)) = P_a` for every a.
pub fn verify_z0_d_coincidence(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), COINCIDENCE_CHECK_ID);
    if !report.hypothesis("semiprime", analysis.is_semiprime()) {
        return report.conclude(true);
    }
    let mismatched = class(analysis, |k| is_d_index(analysis, k) != is_z0_index(analysis, k));
    let classes_agree = mismatched.is_empty();
    let differing = ring
        .elements()
        .find(|&a| analysis.principal_closure(a) != analysis.p_of_element(a));
    report.note(format!("z° and d classes coincide: {classes_agree}"));
    report.note(format!("r(l(RaR)) = P_a for all a: {}", differing.is_none()));
    ideal_list_witness(analysis, &mut report, "class-mismatch", &mismatched);
    if let Some(a) = differing {
        report.witness(Witness::element(ring, "a", a));
    }
    report.conclude(classes_agree == differing.is_none())
}

/// On reduced rings: `P_a = r(l(RaR)) = r(l(a))` for all a, z° = d as classes,
/// and `RaR` is a right annihilator ideal iff it is z°.
pub fn verify_reduced_identities(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), REDUCED_CHECK_ID);
    let reduced = report.hypothesis("reduced", analysis.is_reduced());
    if !reduced {
        if let Some(a) = crate::ideal::first_nonzero_square_zero(ring) {
            report.witness(Witness::element(ring, "nilpotent", a));
        }
        return report.conclude(true);
    }
    let mut ok = true;
    for a in ring.elements() {
        let p = analysis.p_of_element(a);
        let rl_principal = analysis.principal_closure(a);
        let rl_elem = crate::annihilator::double_ann(ring, &ring.subset_of(&[a]));
        if p != rl_principal || rl_principal != &rl_elem {
            ok = false;
            report.note("P_a, r(l(RaR)) and r(l(a)) differ");
            report.witness(Witness::element(ring, "a", a));
            break;
        }
    }
    let mismatched = class(analysis, |k| is_d_index(analysis, k) != is_z0_index(analysis, k));
    if !mismatched.is_empty() {
        ok = false;
        report.note("z° and d classes differ");
        ideal_list_witness(analysis, &mut report, "class-mismatch", &mismatched);
    }
    if let Some(a) = ring.elements().find(|&a| {
        let k = analysis.principal_index(a);
        analysis.is_annihilator_index(k) != is_z0_index(analysis, k)
    }) {
        ok = false;
        report.note("RaR is an annihilator ideal but not z°, or the reverse");
        report.witness(Witness::element(ring, "a", a));
    }
    if ok {
        report.note(format!("identities hold for all {} elements", ring.size()));
    }
    report.conclude(ok)
}

/// On semiprime rings: if `l(I) ⊆ l(a)` then `l(Iy) ⊆ l(ay)` for every y.
pub fn verify_annihilator_transfer(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), TRANSFER_CHECK_ID);
    if !report.hypothesis("semiprime", analysis.is_semiprime()) {
        return report.conclude(true);
    }
    let zero = ring.zero();
    let left_of_elem: Vec<ElementSubset> = ring
        .elements()
        .map(|a| ElementSubset::from_predicate(ring.size(), |x| ring.mul(x, a) == zero))
        .collect();
    let mut checked = 0usize;
    for k in 0..analysis.ideal_count() {
        let gens = ring.span_generators(analysis.ideal(k));
        let l_i = analysis.ideal(analysis.left_ann_index(k));
        for a in ring.elements().filter(|&a| l_i.is_subset(&left_of_elem[a])) {
            for y in ring.elements() {
                checked += 1;
                let ay = ring.mul(a, y);
                let gy: Vec<Elem> = gens.iter().map(|&g| ring.mul(g, y)).collect();
                let bad = ring
                    .elements()
                    .find(|&x| gy.iter().all(|&v| ring.mul(x, v) == zero) && ring.mul(x, ay) != zero);
                if let Some(x) = bad {
                    report.witness(Witness::ideal(ring, "I", analysis.ideal(k)));
                    report.witness(Witness::element(ring, "a", a));
                    report.witness(Witness::element(ring, "y", y));
                    report.witness(Witness::element(ring, "x", x));
                    report.note("x ∈ l(Iy) but x ∉ l(ay)");
                    return report.conclude(false);
                }
            }
        }
    }
    report.note(format!("{checked} (I, a, y) triples checked"));
    report.conclude(true)
}

/// On reduced rings: if `I ∩ P` is z° with P prime then I or P is z°; two
/// incomparable primes with z° intersection are both z°.
pub fn verify_prime_intersection(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), PRIME_INTERSECTION_CHECK_ID);
    if !report.hypothesis("reduced", analysis.is_reduced()) {
        return report.conclude(true);
    }
    let z0: Vec<bool> = (0..analysis.ideal_count()).map(|k| is_z0_index(analysis, k)).collect();
    let primes = &analysis.spectrum().primes;
    let lat = analysis.lattice();
    let mut ok = true;
    let mut pairs = 0usize;
    'outer: for i in 0..analysis.ideal_count() {
        for &p in primes {
            pairs += 1;
            if z0[analysis.meet_index(i, p)] && !z0[i] && !z0[p] {
                ok = false;
                ideal_list_witness(analysis, &mut report, "I", &[i]);
                ideal_list_witness(analysis, &mut report, "P", &[p]);
                report.note("I ∩ P is z° but neither I nor P is");
                break 'outer;
            }
        }
    }
    'outer2: for (x, &p) in primes.iter().enumerate() {
        for &q in &primes[x + 1..] {
            if lat.leq(p, q) || lat.leq(q, p) {
                continue;
            }
            if z0[analysis.meet_index(p, q)] && !(z0[p] && z0[q]) {
                ok = false;
                ideal_list_witness(analysis, &mut report, "P", &[p]);
                ideal_list_witness(analysis, &mut report, "Q", &[q]);
                report.note("incomparable primes with z° intersection, not both z°");
                break 'outer2;
            }
        }
    }
    report.note(format!("{pairs} (ideal, prime) pairs checked"));
    report.conclude(ok)
}

/// Sorted generator notation of an ideal, for notes.
pub fn describe_ideal(ring: &FiniteRing, ideal: &ElementSubset) -> String {
    let gens: Vec<String> = ideal_generators(ring, ideal)
        .into_iter()
        .map(|g| ring.format_element(g))
        .collect();
    format!("<{}>", gens.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::report::Verdict;
    use crate::ring::RingBuilder;

    fn analyze(spec: &str) -> RingAnalysis {
        let r = RingBuilder::default().parse(spec).unwrap();
        RingAnalysis::new(r, &Limits::default()).unwrap()
    }

    #[test]
    fn zmod12_four_is_d_not_z0() {
        let a = analyze("Z12");
        let four = a.ring().subset_of(&[0, 4, 8]);
        assert_eq!(z0_violation(&a, &four).unwrap(), Some(4));
        assert!(is_right_d_ideal(&a, &four).unwrap());
        assert!(!is_sz0_ideal(&a, &four).unwrap());
        assert!(is_z0_ideal(&a, &a.prime_radical().clone()).unwrap());
    }

    #[test]
    fn zmod8_two_is_z4() {
        let a = analyze("Z8");
        let two = a.ring().subset_of(&[0, 2, 4, 6]);
        assert!(is_z0_ideal(&a, &two).unwrap());
        assert!(is_zn0_ideal(&a, &two, 4).unwrap());
        assert!(is_sz0_ideal(&a, &two).unwrap());
    }

    #[test]
    fn zmod6_two_is_z2() {
        let a = analyze("Z6");
        assert!(is_zn0_ideal(&a, &a.ring().subset_of(&[0, 2, 4]), 2).unwrap());
        assert!(is_sz0_ideal(&a, &a.ring().full_subset()).unwrap());
    }

    #[test]
    fn triangular_d_ideal_witnesses() {
        let a = analyze("T2(Z6)");
        let ring = a.ring();
        let ideal = crate::ideal::generated_ideal(
            ring,
            ["[[3,0],[0,0]]", "[[0,1],[0,0]]", "[[0,0],[0,2]]"].map(|s| ring.parse_element(s).unwrap()),
        );
        assert_eq!(ideal.count(), 2 * 6 * 3);
        assert!(is_z0_ideal(&a, &ideal).unwrap());
        let bad = d_violations(&a, &ideal).unwrap();
        let target = ring.parse_element("[[3,1],[0,0]]").unwrap();
        assert!(bad.contains(&target));
        assert!(!is_right_d_ideal(&a, &ideal).unwrap());
    }

    #[test]
    fn five_statements() {
        for (spec, expect) in [("Z6", true), ("Z12", false), ("M2(Z2)", true), ("Z8", false)] {
            let a = analyze(spec);
            let r = verify_d_ideals_are_z0(&a);
            assert_eq!(r.verdict, Verdict::Pass, "{spec}");
            let s2 = r.witnesses.iter().find(|w| w.role() == "s2").unwrap();
            assert_eq!(s2, &Witness::value("s2", expect), "{spec}");
        }
        let a = analyze("Z12");
        let r = verify_d_ideals_are_z0(&a);
        let s4: Vec<&Witness> = r.witnesses.iter().filter(|w| w.role() == "s4:ideal").collect();
        assert_eq!(s4.len(), 2);
    }

    #[test]
    fn classification_rows() {
        let a = analyze("Z12");
        let c = classify_ideal(&a, &a.ring().subset_of(&[0, 4, 8])).unwrap();
        assert!(!c.is_z0 && c.is_right_d && c.is_right_annihilator && !c.is_prime);
        assert!(c.zn0_profile.values().all(|v| !v));
    }

    #[test]
    fn class_checks_pass_on_small_rings() {
        for spec in ["Z2", "Z4", "Z6", "Z8", "Z12", "Z2xZ2", "Z2xZ4", "M2(Z2)", "T2(Z2)"] {
            let a = analyze(spec);
            assert_eq!(verify_z0_classes(&a).unwrap().verdict, Verdict::Pass, "{spec}");
            assert_ne!(verify_z0_d_coincidence(&a).verdict, Verdict::Fail, "{spec}");
            assert_ne!(verify_reduced_identities(&a).verdict, Verdict::Fail, "{spec}");
            assert_ne!(verify_annihilator_transfer(&a).verdict, Verdict::Fail, "{spec}");
            assert_ne!(verify_prime_intersection(&a).verdict, Verdict::Fail, "{spec}");
        }
    }

    #[test]
    fn hypothesis_gates() {
        assert_eq!(
            verify_reduced_identities(&analyze("Z8")).verdict,
            Verdict::HypothesisNotMet
        );
        assert_eq!(
            verify_prime_intersection(&analyze("Z2xZ4")).verdict,
            Verdict::HypothesisNotMet
        );
        assert_eq!(verify_reduced_identities(&analyze("Z2xZ2")).verdict, Verdict::Pass);
    }
}
