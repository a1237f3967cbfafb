//! Check registry, dispatch and catalog runner behind the `zring` binary.

use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use zring_core::annihilator::{self, SA_CHECK_ID};
use zring_core::annihilator_laws as laws;
use zring_core::classify::{self, IdealClassification};
use zring_core::extension::{self, ExtensionView};
use zring_core::frame::{self, AnnihilatorLattice, FrameOptions};
use zring_core::ideal::generated_ideal;
use zring_core::ring::split_top_level;
use zring_core::{
    analysis, axioms, oracle, parse_ring_spec, ElementSubset, FiniteRing, Limits, RingAnalysis, RingBuilder, Verdict,
    VerificationReport,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown check {0:?}; see --list-checks")]
    UnknownCheck(String),
    #[error("check {0:?} needs --ideal")]
    MissingIdeal(String),
    #[error(transparent)]
    Core(#[from] zring_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("catalog: {0}")]
    Catalog(#[from] serde_json::Error),
}

impl HarnessError {
    /// Every input, dispatch or budget error maps to exit code 3.
    pub fn exit_code(&self) -> i32 {
        3
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Needs `--ideal`; passes when the ideal has the property.
    Classifier,
    /// Property of the ring itself.
    RingProperty,
    /// A statement checked exhaustively over the ring; run by catalogs.
    Theorem,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub kind: CheckKind,
    pub statement: &'static str,
}

use CheckKind::*;

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo { id: axioms::CHECK_ID, kind: Theorem, statement: "the tables form an associative unital ring with 0 ≠ 1" },
    CheckInfo { id: oracle::ORACLE_CHECK_ID, kind: Theorem, statement: "ideals, primes, P_a, annihilators and classifier verdicts match a 2^|R| subset scan (|R| ≤ 16)" },
    CheckInfo { id: analysis::SPECTRUM_CHECK_ID, kind: Theorem, statement: "P(R) is the intersection of the (minimal) primes; element-wise and ideal-wise primality agree; P_A is antitone; three semiprime tests agree" },
    CheckInfo { id: classify::Z0_CHECK_ID, kind: Classifier, statement: "P_a ⊆ I for every a ∈ I" },
    CheckInfo { id: classify::ZN0_CHECK_ID, kind: Classifier, statement: "P_F ⊆ I for every F ⊆ I with |F| ≤ n (--n, default 1)" },
    CheckInfo { id: classify::SZ0_CHECK_ID, kind: Classifier, statement: "I is z_n° for every n" },
    CheckInfo { id: classify::D_IDEAL_CHECK_ID, kind: Classifier, statement: "r(l(RaR)) ⊆ I for every a ∈ I" },
    CheckInfo { id: SA_CHECK_ID, kind: RingProperty, statement: "r(I) + r(J) is a right annihilator for all ideals I, J" },
    CheckInfo { id: classify::CLASSES_CHECK_ID, kind: Theorem, statement: "minimal primes and P(R) are z°; P(R) lies in every z°-ideal; z° is closed under intersection; z_n° profiles are antitone" },
    CheckInfo { id: classify::D_IMPLIES_Z0_CHECK_ID, kind: Theorem, statement: "P_a ⊆ r(l(RaR)) ∀a ⇔ R semiprime ⇔ (P_b ⊆ P_a ⇒ l(RaR) ⊆ l(RbR)) ⇔ right d-ideals are z° ⇔ right annihilator ideals are z°" },
    CheckInfo { id: classify::COINCIDENCE_CHECK_ID, kind: Theorem, statement: "semiprime R: z° and right d-ideals coincide iff r(l(RaR)) = P_a for every a" },
    CheckInfo { id: classify::REDUCED_CHECK_ID, kind: Theorem, statement: "reduced R: P_a = r(l(RaR)) = r(l(a)); z° = right d; RaR is an annihilator iff it is z°" },
    CheckInfo { id: classify::TRANSFER_CHECK_ID, kind: Theorem, statement: "semiprime R: l(I) ⊆ l(a) implies l(Iy) ⊆ l(ay) for every y" },
    CheckInfo { id: classify::PRIME_INTERSECTION_CHECK_ID, kind: Theorem, statement: "reduced R: I ∩ P z° with P prime forces I or P z°; incomparable primes with z° meet are z°" },
    CheckInfo { id: extension::MATRIX_P_CHECK_ID, kind: Theorem, statement: "M_n(R): P_A = M_n(P_B) for B the entries of A; ideals are M_n(I); P(M_n(R)) = M_n(P(R))" },
    CheckInfo { id: extension::MATRIX_Z0_CHECK_ID, kind: Theorem, statement: "M_n(R): M_n(I) is z° iff I is z_{n²}°" },
    CheckInfo { id: extension::TRIANGULAR_P_CHECK_ID, kind: Theorem, statement: "T_n(R): P_A has diagonal P_{a_ii} and R above the diagonal" },
    CheckInfo { id: extension::TRIANGULAR_PRIMES_CHECK_ID, kind: Theorem, statement: "T_n(R): ideals are nested grids; primes are R except one prime diagonal entry" },
    CheckInfo { id: extension::TRIANGULAR_Z0_CHECK_ID, kind: Theorem, statement: "T_n(R): a grid is z° iff its diagonal is z° and its upper entries are R" },
    CheckInfo { id: extension::GT_PRIMES_CHECK_ID, kind: Theorem, statement: "[[S,M],[0,R]]: ideals are (I,N,L) with IM+ML ⊆ N; primes are (P,M,R) and (S,M,Q)" },
    CheckInfo { id: extension::GT_P_CHECK_ID, kind: Theorem, statement: "[[S,M],[0,R]]: P_A = (P_{a11}, M, P_{a22})" },
    CheckInfo { id: extension::GT_Z0_CHECK_ID, kind: Theorem, statement: "[[S,M],[0,R]]: (I,N,L) is z° iff N = M and I, L are z°" },
    CheckInfo { id: laws::PRODUCT_ANN_CHECK_ID, kind: Theorem, statement: "R semiprime ⇔ l(IJ) = l(I ∩ J) ∀I,J ⇔ r(l(IJ)) = r(l(I)) ∩ r(l(J)) ∀I,J" },
    CheckInfo { id: frame::LATTICE_CHECK_ID, kind: Theorem, statement: "right annihilator ideals are closed under ∩ and r(l(I) ∩ l(J)), bounded, and generated by the r(l(RaR))" },
    CheckInfo { id: frame::FRAME_LAW_CHECK_ID, kind: Theorem, statement: "semiprime R: J ∧ ⋁A = ⋁(J ∧ a) in rAnn(id(R)), plus the sum identity" },
    CheckInfo { id: frame::SUM_IDENTITY_CHECK_ID, kind: Theorem, statement: "semiprime R: J ∩ r(l(Σ I_α)) = r(l(Σ (I_α ∩ J))) for annihilator J and arbitrary ideals I_α" },
    CheckInfo { id: frame::COMPACT_CHECK_ID, kind: Theorem, statement: "semiprime R: each annihilator ideal is a finite join of r(l(RaR)); R = r(l(R1R))" },
    CheckInfo { id: frame::COHERENCE_CHECK_ID, kind: Theorem, statement: "semiprime R: l(RaRbR) = l(RabR) ∀a,b iff R is reduced; reduced R: r(l(RaR)) ∩ r(l(RbR)) = r(l(RabR))" },
    CheckInfo { id: laws::CLOSURE_CHECK_ID, kind: Theorem, statement: "I_A = r(l(I)) is extensive, monotone, idempotent, and obeys the sum, meet and radical rules under their hypotheses" },
    CheckInfo { id: laws::ESSENTIAL_CHECK_ID, kind: Theorem, statement: "semiprime R: I_A = R iff I is essential; a maximal ideal is an annihilator iff idempotent-generated" },
    CheckInfo { id: laws::SA_EQUIVALENCE_CHECK_ID, kind: Theorem, statement: "largest contained annihilators exist ⇔ SA ⇔ (I+J)_A = I_A + J_A; on SA rings the I_A and I^A sum formulas hold" },
    CheckInfo { id: laws::COPRIME_LEMMA_CHECK_ID, kind: Theorem, statement: "pairwise co-prime I_1..I_n: each I_j is co-prime to the intersection of the others" },
    CheckInfo { id: laws::COPRIME_ANN_CHECK_ID, kind: Theorem, statement: "semiprime R, pairwise co-prime family: ∩ I_j is an annihilator iff every I_j is" },
    CheckInfo { id: laws::PRIME_ANN_CHECK_ID, kind: Theorem, statement: "semiprime R: I ∩ P annihilator with P prime forces I or P annihilator; maximal-ideal and prime-pair variants" },
];

pub fn check_info(id: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.id == id)
}

/// Checks run by catalogs, in report order.
pub fn catalog_checks() -> impl Iterator<Item = &'static CheckInfo> {
    CHECKS.iter().filter(|c| c.kind == Theorem)
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub ideal: Option<String>,
    pub n: Option<usize>,
    pub seed: u64,
    pub exploratory: bool,
    /// Record wall-clock time; off by default so reports stay byte-identical.
    pub timing: bool,
}

pub fn build_ring(spec: &str, limits: &Limits) -> Result<FiniteRing> {
    Ok(parse_ring_spec(spec)?.build(&RingBuilder::new(limits))?)
}

pub fn analyze(spec: &str, limits: &Limits) -> Result<RingAnalysis> {
    Ok(RingAnalysis::new(build_ring(spec, limits)?, limits)?)
}

/// Resolves an ideal description in the ambient ring.
///
/// Plain generator lists (`4` or `2,3`; `#k` for raw indices) name the
/// generated ideal. `Mn:`, `Tn:` and `GT:` prefixes use the structured syntax
/// of [`ExtensionView::parse_ideal`].
pub fn parse_ideal(analysis: &RingAnalysis, text: &str) -> Result<ElementSubset> {
    let t = text.trim();
    let structured = ["Mn:", "Tn:", "GT:"].iter().any(|p| t.starts_with(p))
        || t.split_once(':').is_some_and(|(tag, _)| {
            tag.len() > 1
                && (tag.starts_with('M') || tag.starts_with('T'))
                && tag[1..].chars().all(|c| c.is_ascii_digit())
        });
    if structured {
        let view = ExtensionView::of(analysis.ring_arc(), analysis.limits())?;
        let ideal = view.parse_ideal(t)?;
        return Ok(view.materialize(&ideal)?);
    }
    let ring = analysis.ring();
    let mut gens = Vec::new();
    for g in split_top_level(t, ',') {
        if !g.trim().is_empty() {
            gens.push(ring.parse_element(g)?);
        }
    }
    Ok(generated_ideal(ring, gens))
}

/// Runs one check on an analysed ring.
pub fn run_on(analysis: &RingAnalysis, check_id: &str, opts: &RunOptions) -> Result<VerificationReport> {
    let info = check_info(check_id).ok_or_else(|| HarnessError::UnknownCheck(check_id.to_string()))?;
    let start = Instant::now();
    let outcome: zring_core::Result<VerificationReport> = match info.id {
        axioms::CHECK_ID => Ok(axioms::validate_ring(analysis.ring())),
        oracle::ORACLE_CHECK_ID => Ok(oracle::verify_ideal_oracle(analysis)),
        analysis::SPECTRUM_CHECK_ID => analysis::verify_prime_spectrum(analysis),
        classify::Z0_CHECK_ID | classify::ZN0_CHECK_ID | classify::SZ0_CHECK_ID | classify::D_IDEAL_CHECK_ID => {
            let text = opts
                .ideal
                .as_deref()
                .ok_or_else(|| HarnessError::MissingIdeal(check_id.to_string()))?;
            let ideal = parse_ideal(analysis, text)?;
            classify::classifier_report(analysis, info.id, &ideal, opts.n)
        }
        SA_CHECK_ID => Ok(annihilator::is_sa_ring(analysis)),
        classify::CLASSES_CHECK_ID => classify::verify_z0_classes(analysis),
        classify::D_IMPLIES_Z0_CHECK_ID => Ok(classify::verify_d_ideals_are_z0(analysis)),
        classify::COINCIDENCE_CHECK_ID => Ok(classify::verify_z0_d_coincidence(analysis)),
        classify::REDUCED_CHECK_ID => Ok(classify::verify_reduced_identities(analysis)),
        classify::TRANSFER_CHECK_ID => Ok(classify::verify_annihilator_transfer(analysis)),
        classify::PRIME_INTERSECTION_CHECK_ID => Ok(classify::verify_prime_intersection(analysis)),
        extension::MATRIX_P_CHECK_ID => extension::verify_matrix_p_operator(analysis),
        extension::MATRIX_Z0_CHECK_ID => extension::verify_matrix_z0(analysis),
        extension::TRIANGULAR_P_CHECK_ID => extension::verify_triangular_p_operator(analysis),
        extension::TRIANGULAR_PRIMES_CHECK_ID => extension::verify_triangular_primes(analysis),
        extension::TRIANGULAR_Z0_CHECK_ID => extension::verify_triangular_z0(analysis),
        extension::GT_PRIMES_CHECK_ID => extension::verify_gt_primes(analysis),
        extension::GT_P_CHECK_ID => extension::verify_gt_p_operator(analysis),
        extension::GT_Z0_CHECK_ID => extension::verify_gt_z0(analysis),
        laws::PRODUCT_ANN_CHECK_ID => Ok(laws::verify_product_annihilators(analysis)),
        frame::LATTICE_CHECK_ID => Ok(frame::verify_annihilator_lattice(analysis)),
        frame::FRAME_LAW_CHECK_ID => frame::verify_frame_law(
            analysis,
            FrameOptions {
                seed: opts.seed,
                exploratory: opts.exploratory,
            },
        ),
        frame::SUM_IDENTITY_CHECK_ID => frame::verify_sum_identity(analysis),
        frame::COMPACT_CHECK_ID => frame::verify_compact_decomposition(analysis),
        frame::COHERENCE_CHECK_ID => Ok(frame::verify_coherence(analysis)),
        laws::CLOSURE_CHECK_ID => laws::verify_closure_properties(analysis),
        laws::ESSENTIAL_CHECK_ID => laws::verify_essential_idempotent(analysis),
        laws::SA_EQUIVALENCE_CHECK_ID => laws::verify_sa_equivalence(analysis),
        laws::COPRIME_LEMMA_CHECK_ID => Ok(laws::verify_coprime_lemma(analysis)),
        laws::COPRIME_ANN_CHECK_ID => Ok(laws::verify_coprime_annihilator(analysis)),
        laws::PRIME_ANN_CHECK_ID => Ok(laws::verify_prime_annihilator(analysis)),
        other => return Err(HarnessError::UnknownCheck(other.to_string())),
    };
    let mut report = match outcome {
        Ok(r) => r,
        Err(e) if e.is_budget() => {
            VerificationReport::new(analysis.ring().spec(), check_id).budget_exceeded(e.to_string())
        }
        Err(e) => return Err(e.into()),
    };
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

/// Parses `spec`, builds the ring and runs one check.
///
/// Size-cap refusals become a budget-exceeded report; parse errors and
/// unknown checks are errors.
pub fn run_check(spec: &str, check_id: &str, opts: &RunOptions, limits: &Limits) -> Result<VerificationReport> {
    check_info(check_id).ok_or_else(|| HarnessError::UnknownCheck(check_id.to_string()))?;
    match analyze(spec, limits) {
        Ok(a) => run_on(&a, check_id, opts),
        Err(HarnessError::Core(e)) if e.is_budget() => {
            Ok(VerificationReport::new(spec, check_id).budget_exceeded(e.to_string()))
        }
        Err(e) => Err(e),
    }
}

pub fn classify(spec: &str, ideal: &str, limits: &Limits) -> Result<IdealClassification> {
    let a = analyze(spec, limits)?;
    let i = parse_ideal(&a, ideal)?;
    Ok(classify::classify_ideal(&a, &i)?)
}

pub fn lattice(spec: &str, limits: &Limits) -> Result<(RingAnalysis, AnnihilatorLattice)> {
    let a = analyze(spec, limits)?;
    let l = AnnihilatorLattice::build(&a)?;
    Ok((a, l))
}

// ---- catalogs ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub ring: String,
    /// Per-entry overrides; unspecified fields fall back to the defaults.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limits: Option<Limits>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// The sixteen-ring catalog shipped in `catalogs/default.json`.
    pub fn default_catalog() -> Self {
        Self::from_json(include_str!("../catalogs/default.json")).expect("bundled catalog parses")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRun {
    pub schema: u32,
    pub seed: u64,
    pub reports: Vec<VerificationReport>,
}

impl CatalogRun {
    /// Maximum exit code over all reports; 0 for an empty run.
    pub fn exit_code(&self) -> i32 {
        self.reports.iter().map(|r| r.verdict.exit_code()).max().unwrap_or(0)
    }

    /// Reports that indicate a mathematical failure or a blown budget.
    pub fn bad(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Fail | Verdict::BudgetExceeded))
    }
}

fn run_entry(
    entry: &CatalogEntry,
    checks: &[&'static CheckInfo],
    opts: &RunOptions,
    base: &Limits,
) -> Vec<VerificationReport> {
    let limits = entry.limits.clone().unwrap_or_else(|| base.clone());
    let analysis = match analyze(&entry.ring, &limits) {
        Ok(a) => Arc::new(a),
        Err(e) => {
            let r = VerificationReport::new(entry.ring.clone(), "construction");
            let r = if matches!(&e, HarnessError::Core(c) if c.is_budget()) {
                r.budget_exceeded(e.to_string())
            } else {
                r.budget_exceeded(format!("input error: {e}"))
            };
            return vec![r];
        }
    };
    checks
        .par_iter()
        .map(|c| {
            run_on(&analysis, c.id, opts).unwrap_or_else(|e| {
                VerificationReport::new(analysis.ring().spec(), c.id).budget_exceeded(e.to_string())
            })
        })
        .collect()
}

/// Runs every theorem check (or `filter`) on every entry.
///
/// Entries run in parallel; reports follow catalog order, then check order.
pub fn run_catalog(
    catalog: &Catalog,
    filter: Option<&[String]>,
    opts: &RunOptions,
    limits: &Limits,
) -> Result<CatalogRun> {
    let checks: Vec<&'static CheckInfo> = match filter {
        None => catalog_checks().collect(),
        Some(ids) => ids
            .iter()
            .map(|id| check_info(id).ok_or_else(|| HarnessError::UnknownCheck(id.clone())))
            .collect::<Result<_>>()?,
    };
    if checks.iter().any(|c| c.kind == Classifier) {
        let c = checks.iter().find(|c| c.kind == Classifier).expect("just found");
        return Err(HarnessError::MissingIdeal(c.id.to_string()));
    }
    let reports = catalog
        .entries
        .par_iter()
        .map(|e| run_entry(e, &checks, opts, limits))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Ok(CatalogRun {
        schema: zring_core::report::SCHEMA_VERSION,
        seed: opts.seed,
        reports,
    })
}

/// `--list-checks` text: one line per check id.
pub fn list_checks() -> String {
    let width = CHECKS.iter().map(|c| c.id.len()).max().unwrap_or(0);
    CHECKS
        .iter()
        .map(|c| {
            let kind = match c.kind {
                Classifier => "classifier",
                RingProperty => "ring",
                Theorem => "theorem",
            };
            format!("{:width$}  {:10}  {}\n", c.id, kind, c.statement)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique() {
        let mut ids: Vec<&str> = CHECKS.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        assert_eq!(before, ids.len());
    }

    #[test]
    fn every_check_dispatches() {
        let a = analyze("Z6", &Limits::default()).unwrap();
        let opts = RunOptions {
            ideal: Some("2".into()),
            ..RunOptions::default()
        };
        for c in CHECKS {
            let r = run_on(&a, c.id, &opts).unwrap();
            assert!(r.is_well_formed(), "{}", c.id);
        }
    }

    #[test]
    fn ideal_descriptions() {
        let a = analyze("Z12", &Limits::default()).unwrap();
        assert_eq!(parse_ideal(&a, "4").unwrap().to_vec(), vec![0, 4, 8]);
        assert_eq!(parse_ideal(&a, "4, 6").unwrap().to_vec(), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(parse_ideal(&a, "").unwrap().to_vec(), vec![0]);
        let t = analyze("T2(Z6)", &Limits::default()).unwrap();
        assert_eq!(parse_ideal(&t, "Tn:[[3,R],[0,2]]").unwrap().count(), 2 * 6 * 3);
    }

    #[test]
    fn default_catalog_has_sixteen_rings() {
        assert_eq!(Catalog::default_catalog().entries.len(), 16);
    }
}
