//! Checks for the identities relating annihilators, closures and co-prime families.

use crate::analysis::RingAnalysis;
use crate::annihilator::{
    largest_contained_annihilator, left_ann, principal_join, principal_sum, right_ann, sum_of_contained_annihilators,
};
use crate::error::Result;
use crate::report::{VerificationReport, Witness};

pub const PRODUCT_ANN_CHECK_ID: &str = "semiprime-product-annihilators";
pub const CLOSURE_CHECK_ID: &str = "annihilator-closure";
pub const ESSENTIAL_CHECK_ID: &str = "essential-idempotent";
pub const SA_EQUIVALENCE_CHECK_ID: &str = "sa-equivalence";
pub const COPRIME_LEMMA_CHECK_ID: &str = "coprime-lemma";
pub const COPRIME_ANN_CHECK_ID: &str = "coprime-annihilator";
pub const PRIME_ANN_CHECK_ID: &str = "prime-annihilator";

fn ideal_w(analysis: &RingAnalysis, role: &str, k: usize) -> Witness {
    Witness::ideal(analysis.ring(), role, analysis.ideal(k))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i..n).map(move |j| (i, j)))
}

/// Semiprime iff `l(IJ) = l(I ∩ J)` (and `r(IJ) = r(I ∩ J)`) for all ideals,
/// iff `r(l(IJ)) = r(l(I ∩ J)) = r(l(I)) ∩ r(l(J))` for all ideals.
pub fn verify_product_annihilators(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), PRODUCT_ANN_CHECK_ID);
    let semiprime = analysis.is_semiprime();
    let mut second = None;
    let mut third = None;
    for (i, j) in pairs(analysis.ideal_count()) {
        let prod = analysis.product_index(i, j);
        let meet = analysis.meet_index(i, j);
        if second.is_none()
            && (analysis.left_ann_index(prod) != analysis.left_ann_index(meet)
                || analysis.right_ann_index(prod) != analysis.right_ann_index(meet))
        {
            second = Some((i, j));
        }
        let closure_meet = analysis.meet_index(analysis.closure_index(i), analysis.closure_index(j));
        if third.is_none()
            && (analysis.closure_index(prod) != analysis.closure_index(meet)
                || analysis.closure_index(meet) != closure_meet)
        {
            third = Some((i, j));
        }
        if second.is_some() && third.is_some() {
            break;
        }
    }
    for (label, hit) in [("s2", second), ("s3", third)] {
        if let Some((i, j)) = hit {
            report.witness(ideal_w(analysis, &format!("{label}:I"), i));
            report.witness(ideal_w(analysis, &format!("{label}:J"), j));
        }
    }
    let values = [semiprime, second.is_none(), third.is_none()];
    report.note(format!("semiprime: {}", values[0]));
    report.note(format!("l(IJ) = l(I∩J) for all pairs: {}", values[1]));
    report.note(format!(
        "r(l(IJ)) = r(l(I∩J)) = r(l(I)) ∩ r(l(J)) for all pairs: {}",
        values[2]
    ));
    let agree = values.iter().all(|&v| v == values[0]);
    report.conclude(agree)
}

/// Properties of `I_A = r(l(I))`.
///
/// On every ring: `I ⊆ I_A`, `I_A` is idempotent and equals the lattice join
/// of the `r(l(RaR))`, `a ∈ I`; `l(S) = l(r(l(S)))` for ideals and singletons;
/// `I ⊆ J ⇒ I_A ⊆ J_A`; `(I+J)_A = (I_A+J_A)_A`. On reduced rings
/// `I ⊆ √I ⊆ I_A`; on semiprime rings `(I∩J)_A = I_A ∩ J_A`; on SA rings
/// `I_A = Σ_{a∈I} r(l(RaR))`.
pub fn verify_closure_properties(analysis: &RingAnalysis) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), CLOSURE_CHECK_ID);
    let n = analysis.ideal_count();
    let lat = analysis.lattice();
    let reduced = analysis.is_reduced();
    let semiprime = analysis.is_semiprime();
    let sa = crate::annihilator::is_sa(analysis);
    report.note(format!("reduced: {reduced}, semiprime: {semiprime}, SA: {sa}"));
    let fail = |report: &mut VerificationReport, what: &str, ks: &[usize]| {
        report.note(what.to_string());
        for &k in ks {
            report.witness(ideal_w(analysis, "ideal", k));
        }
    };
    let mut ok = true;

    for k in 0..n {
        let c = analysis.closure_index(k);
        let ideal = analysis.ideal(k);
        if !lat.leq(k, c) {
            ok = false;
            fail(&mut report, "I is not inside I_A", &[k]);
        }
        if analysis.closure_index(c) != c {
            ok = false;
            fail(&mut report, "I_A is not idempotent", &[k]);
        }
        if analysis.left_ann_index(c) != analysis.left_ann_index(k) {
            ok = false;
            fail(&mut report, "l(I) differs from l(r(l(I)))", &[k]);
        }
        if &principal_join(analysis, ideal.iter()) != analysis.ideal(c) {
            ok = false;
            fail(&mut report, "I_A differs from the join of r(l(RaR)) over I", &[k]);
        }
        if reduced {
            let root = crate::ideal::sqrt_ideal(ring, ideal)?;
            if !ideal.is_subset(&root) || !root.is_subset(analysis.ideal(c)) {
                ok = false;
                fail(&mut report, "I ⊆ √I ⊆ I_A fails", &[k]);
            }
        }
        if sa && &principal_sum(analysis, ideal.iter()) != analysis.ideal(c) {
            ok = false;
            fail(&mut report, "I_A differs from the sum of r(l(RaR)) over I", &[k]);
        }
    }

    if let Some(a) = ring.elements().find(|&a| {
        let s = ring.subset_of(&[a]);
        let l = left_ann(ring, &s);
        let rl = right_ann(ring, &l);
        !rl.contains(a) || left_ann(ring, &rl) != l
    }) {
        ok = false;
        report.note("Galois property fails on a singleton");
        report.witness(Witness::element(ring, "a", a));
    }

    for (i, j) in pairs(n) {
        let (ci, cj) = (analysis.closure_index(i), analysis.closure_index(j));
        if lat.leq(i, j) && !lat.leq(ci, cj) {
            ok = false;
            fail(&mut report, "closure is not monotone", &[i, j]);
        }
        if semiprime && analysis.closure_index(analysis.meet_index(i, j)) != analysis.meet_index(ci, cj) {
            ok = false;
            fail(&mut report, "(I∩J)_A differs from I_A ∩ J_A", &[i, j]);
        }
        let lhs = analysis.closure_index(analysis.sum_index(i, j));
        let rhs = analysis.closure_index(analysis.sum_index(ci, cj));
        if lhs != rhs {
            ok = false;
            fail(&mut report, "(I+J)_A differs from (I_A+J_A)_A", &[i, j]);
        }
    }
    Ok(report.conclude(ok))
}

/// On semiprime rings: `I_A = R` iff I is essential, and a maximal ideal is a
/// right annihilator ideal iff it is generated by an idempotent.
pub fn verify_essential_idempotent(analysis: &RingAnalysis) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), ESSENTIAL_CHECK_ID);
    if !report.hypothesis("semiprime", analysis.is_semiprime()) {
        return Ok(report.conclude(true));
    }
    let top = analysis.lattice().top_index();
    let mut ok = true;
    for k in 0..analysis.ideal_count() {
        let essential = crate::annihilator::is_essential_ideal(analysis, analysis.ideal(k))?;
        if essential != (analysis.closure_index(k) == top) {
            ok = false;
            report.note("I_A = R disagrees with essentiality");
            report.witness(ideal_w(analysis, "ideal", k));
        }
    }
    let mut maximal = 0;
    for k in (0..analysis.ideal_count()).filter(|&k| analysis.is_maximal_index(k)) {
        maximal += 1;
        let idem = crate::annihilator::idempotent_generator(analysis, analysis.ideal(k))?;
        if idem.is_some() != analysis.is_annihilator_index(k) {
            ok = false;
            report.note("maximal ideal: annihilator status disagrees with idempotent generation");
            report.witness(ideal_w(analysis, "maximal", k));
        }
    }
    report.note(format!(
        "{} ideals and {maximal} maximal ideals checked",
        analysis.ideal_count()
    ));
    Ok(report.conclude(ok))
}

/// The three SA conditions agree, and on SA rings both closure formulas hold.
///
/// (1) every ideal contains a largest right annihilator ideal, tested as: the
/// sum of the annihilator ideals inside I is an annihilator ideal; (2) SA;
/// (3) `(I+J)_A = I_A + J_A` for all ideals. On SA rings, also
/// `I_A = Σ_{a∈I} r(l(RaR))` and `I^A = Σ_{r(l(RaR))⊆I} r(l(RaR))`, the
/// latter containing every annihilator ideal inside I.
pub fn verify_sa_equivalence(analysis: &RingAnalysis) -> Result<VerificationReport> {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), SA_EQUIVALENCE_CHECK_ID);
    let n = analysis.ideal_count();

    let first = (0..n).find(|&k| {
        let s = sum_of_contained_annihilators(analysis, k);
        !analysis.index_of(&s).is_some_and(|x| analysis.is_annihilator_index(x))
    });
    let second = crate::annihilator::first_sa_violation(analysis);
    let third = pairs(n).find(|&(i, j)| {
        let lhs = analysis.closure_index(analysis.sum_index(i, j));
        let rhs = analysis.sum_index(analysis.closure_index(i), analysis.closure_index(j));
        lhs != rhs
    });
    if let Some(k) = first {
        report.witness(ideal_w(analysis, "s1:I", k));
    }
    if let Some((i, j)) = second {
        report.witness(ideal_w(analysis, "s2:I", i));
        report.witness(ideal_w(analysis, "s2:J", j));
    }
    if let Some((i, j)) = third {
        report.witness(ideal_w(analysis, "s3:I", i));
        report.witness(ideal_w(analysis, "s3:J", j));
    }
    let values = [first.is_none(), second.is_none(), third.is_none()];
    report.note(format!(
        "largest contained annihilator exists for every ideal: {}",
        values[0]
    ));
    report.note(format!("SA-ring: {}", values[1]));
    report.note(format!("(I+J)_A = I_A + J_A for all pairs: {}", values[2]));
    let mut ok = values.iter().all(|&v| v == values[0]);
    if !ok {
        report.note("conditions disagree");
    }

    if values[1] {
        for k in 0..n {
            let ideal = analysis.ideal(k);
            if &principal_sum(analysis, ideal.iter()) != analysis.ideal(analysis.closure_index(k)) {
                ok = false;
                report.note("sum form of I_A fails");
                report.witness(ideal_w(analysis, "dagger:I", k));
            }
            match largest_contained_annihilator(analysis, ideal) {
                Ok(inner) if inner == sum_of_contained_annihilators(analysis, k) => {}
                Ok(_) => {
                    ok = false;
                    report.note("I^A formula differs from the sum of contained annihilators");
                    report.witness(ideal_w(analysis, "ddagger:I", k));
                }
                Err(e) => {
                    ok = false;
                    report.note(format!("I^A formula: {e}"));
                    report.witness(ideal_w(analysis, "ddagger:I", k));
                }
            }
        }
    }
    Ok(report.conclude(ok))
}

/// Pairwise co-prime families (`I + J = R`) of distinct ideals, sizes 2 to `max`.
pub fn coprime_families(analysis: &RingAnalysis, max: usize) -> Vec<Vec<usize>> {
    let n = analysis.ideal_count();
    let top = analysis.lattice().top_index();
    let coprime: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| analysis.sum_index(i, j) == top).collect())
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn grow(
        start: usize,
        n: usize,
        max: usize,
        coprime: &[Vec<bool>],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for k in start..n {
            if stack.iter().all(|&s| coprime[s][k]) {
                stack.push(k);
                if stack.len() >= 2 {
                    out.push(stack.clone());
                }
                if stack.len() < max {
                    grow(k + 1, n, max, coprime, stack, out);
                }
                stack.pop();
            }
        }
    }
    grow(0, n, max, &coprime, &mut stack, &mut out);
    out
}

fn meet_all(analysis: &RingAnalysis, ks: impl IntoIterator<Item = usize>) -> usize {
    ks.into_iter()
        .fold(analysis.lattice().top_index(), |acc, k| analysis.meet_index(acc, k))
}

fn family_witness(analysis: &RingAnalysis, report: &mut VerificationReport, fam: &[usize]) {
    for &k in fam {
        report.witness(ideal_w(analysis, "family-member", k));
    }
}

/// For pairwise co-prime `I_1..I_n`, each `I_j` is co-prime to `∩_{i≠j} I_i`.
pub fn verify_coprime_lemma(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), COPRIME_LEMMA_CHECK_ID);
    let families = coprime_families(analysis, analysis.limits().coprime_family_max);
    let top = analysis.lattice().top_index();
    for fam in &families {
        for (x, &j) in fam.iter().enumerate() {
            let rest = meet_all(
                analysis,
                fam.iter().enumerate().filter(|(y, _)| *y != x).map(|(_, &k)| k),
            );
            if analysis.sum_index(j, rest) != top {
                family_witness(analysis, &mut report, fam);
                report.witness(ideal_w(analysis, "I_j", j));
                report.note("I_j is not co-prime to the intersection of the others");
                return report.conclude(false);
            }
        }
    }
    report.note(format!("{} co-prime families checked", families.len()));
    report.conclude(true)
}

/// On semiprime rings, for pairwise co-prime families: `∩ I_j` is a right
/// annihilator ideal iff every `I_j` is.
pub fn verify_coprime_annihilator(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), COPRIME_ANN_CHECK_ID);
    if !report.hypothesis("semiprime", analysis.is_semiprime()) {
        return report.conclude(true);
    }
    let families = coprime_families(analysis, analysis.limits().coprime_family_max);
    for fam in &families {
        let meet = meet_all(analysis, fam.iter().copied());
        let all = fam.iter().all(|&k| analysis.is_annihilator_index(k));
        if analysis.is_annihilator_index(meet) != all {
            family_witness(analysis, &mut report, fam);
            report.note("annihilator status of the intersection disagrees with the members");
            return report.conclude(false);
        }
    }
    report.note(format!("{} co-prime families checked", families.len()));
    report.conclude(true)
}

/// On semiprime rings: if `I ∩ P` is a right annihilator ideal with P prime then
/// I or P is one; incomparable primes with annihilator intersection are both
/// annihilator ideals; `I ⊄ M` maximal with `I ∩ M` annihilator makes both annihilators.
pub fn verify_prime_annihilator(analysis: &RingAnalysis) -> VerificationReport {
    let ring = analysis.ring();
    let mut report = VerificationReport::new(ring.spec(), PRIME_ANN_CHECK_ID);
    if !report.hypothesis("semiprime", analysis.is_semiprime()) {
        return report.conclude(true);
    }
    let lat = analysis.lattice();
    let n = analysis.ideal_count();
    let ann = |k: usize| analysis.is_annihilator_index(k);
    let primes = &analysis.spectrum().primes;
    for i in 0..n {
        for &p in primes {
            if ann(analysis.meet_index(i, p)) && !ann(i) && !ann(p) {
                report.witness(ideal_w(analysis, "I", i));
                report.witness(ideal_w(analysis, "P", p));
                report.note("I ∩ P is an annihilator ideal but neither I nor P is");
                return report.conclude(false);
            }
        }
    }
    for (x, &p) in primes.iter().enumerate() {
        for &q in &primes[x + 1..] {
            if !lat.leq(p, q) && !lat.leq(q, p) && ann(analysis.meet_index(p, q)) && !(ann(p) && ann(q)) {
                report.witness(ideal_w(analysis, "P", p));
                report.witness(ideal_w(analysis, "Q", q));
                report.note("incomparable primes with annihilator intersection, not both annihilators");
                return report.conclude(false);
            }
        }
    }
    for m in (0..n).filter(|&k| analysis.is_maximal_index(k)) {
        for i in 0..n {
            if !lat.leq(i, m) && ann(analysis.meet_index(i, m)) && !(ann(i) && ann(m)) {
                report.witness(ideal_w(analysis, "I", i));
                report.witness(ideal_w(analysis, "M", m));
                report.note("I ∩ M is an annihilator ideal with I ⊄ M, but I or M is not");
                return report.conclude(false);
            }
        }
    }
    report.note(format!("{} ideals against {} primes checked", n, primes.len()));
    report.conclude(true)
}
