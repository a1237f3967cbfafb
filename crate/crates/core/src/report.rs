//! Machine-readable record of one theorem check on one ring.

use serde::{Deserialize, Serialize};

use crate::ideal::ideal_generators;
use crate::ring::{Elem, FiniteRing};
use crate::subset::ElementSubset;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
    BudgetExceeded,
}

impl Verdict {
    /// Process exit code: 0 pass, 1 fail, 2 hypothesis not met, 3 budget or input error.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::HypothesisNotMet => 2,
            Verdict::BudgetExceeded => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Element {
        role: String,
        index: usize,
        notation: String,
    },
    /// A two-sided ideal, given by a sorted generator list and its mask.
    Ideal {
        role: String,
        generators: Vec<String>,
        mask: String,
    },
    /// An arbitrary element set.
    Set {
        role: String,
        size: usize,
        mask: String,
    },
    Value {
        role: String,
        value: String,
    },
}

impl Witness {
    pub fn role(&self) -> &str {
        match self {
            Witness::Element { role, .. }
            | Witness::Ideal { role, .. }
            | Witness::Set { role, .. }
            | Witness::Value { role, .. } => role,
        }
    }

    pub fn element(ring: &FiniteRing, role: impl Into<String>, e: Elem) -> Self {
        Witness::Element {
            role: role.into(),
            index: e,
            notation: ring.format_element(e),
        }
    }

    /// `s` must be an ideal of `ring`.
    pub fn ideal(ring: &FiniteRing, role: impl Into<String>, s: &ElementSubset) -> Self {
        Witness::Ideal {
            role: role.into(),
            generators: ideal_generators(ring, s)
                .into_iter()
                .map(|g| ring.format_element(g))
                .collect(),
            mask: s.to_hex(),
        }
    }

    pub fn set(role: impl Into<String>, s: &ElementSubset) -> Self {
        Witness::Set {
            role: role.into(),
            size: s.count(),
            mask: s.to_hex(),
        }
    }

    pub fn value(role: impl Into<String>, value: impl ToString) -> Self {
        Witness::Value {
            role: role.into(),
            value: value.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub ring_spec: String,
    pub check_id: String,
    pub hypotheses: Vec<Hypothesis>,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(ring_spec: impl Into<String>, check_id: impl Into<String>) -> Self {
        VerificationReport {
            schema: SCHEMA_VERSION,
            ring_spec: ring_spec.into(),
            check_id: check_id.into(),
            hypotheses: Vec::new(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            notes: Vec::new(),
            timing_ms: None,
            seed: None,
        }
    }

    /// Records a hypothesis; returns whether it is met.
    pub fn hypothesis(&mut self, name: impl Into<String>, met: bool) -> bool {
        self.hypotheses.push(Hypothesis { name: name.into(), met });
        met
    }

    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.met)
    }

    pub fn witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Sets the verdict from the hypotheses and the outcome of the check.
    ///
    /// Unmet hypotheses win over the outcome. A failing verdict always carries
    /// at least one witness.
    pub fn conclude(mut self, holds: bool) -> Self {
        self.verdict = if !self.hypotheses_met() {
            Verdict::HypothesisNotMet
        } else if holds {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        if self.verdict == Verdict::Fail && self.witnesses.is_empty() {
            let msg = self.notes.last().cloned().unwrap_or_else(|| "check failed".to_string());
            self.witnesses.push(Witness::value("failure", msg));
        }
        self
    }

    pub fn budget_exceeded(mut self, why: impl Into<String>) -> Self {
        self.verdict = Verdict::BudgetExceeded;
        self.notes.push(why.into());
        self
    }

    /// True when the invariants tying verdicts to witnesses and hypotheses hold.
    pub fn is_well_formed(&self) -> bool {
        let fail_ok = self.verdict != Verdict::Fail || !self.witnesses.is_empty();
        let hyp_ok = self.verdict != Verdict::HypothesisNotMet || !self.hypotheses_met();
        fail_ok && hyp_ok && self.schema == SCHEMA_VERSION
    }

    pub fn witness_roles(&self) -> impl Iterator<Item = &str> {
        self.witnesses.iter().map(|w| w.role())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn failing_report_gets_a_witness() {
        let mut r = VerificationReport::new("Z6", "demo");
        r.note("something broke");
        let r = r.conclude(false);
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witnesses.len(), 1);
        assert!(r.is_well_formed());
    }

    #[test]
    fn unmet_hypothesis_wins() {
        let mut r = VerificationReport::new("Z12", "demo");
        r.hypothesis("semiprime", false);
        let r = r.conclude(true);
        assert_eq!(r.verdict, Verdict::HypothesisNotMet);
        assert_eq!(r.verdict.exit_code(), 2);
    }

    proptest! {
        #[test]
        fn conclude_is_always_well_formed(hyps in proptest::collection::vec(any::<bool>(), 0..4), holds in any::<bool>(), with_witness in any::<bool>()) {
            let mut r = VerificationReport::new("Z2", "p");
            for (i, h) in hyps.iter().enumerate() {
                r.hypothesis(format!("h{i}"), *h);
            }
            if with_witness {
                r.witness(Witness::value("w", 1));
            }
            let r = r.conclude(holds);
            prop_assert!(r.is_well_formed());
            prop_assert_eq!(r.verdict == Verdict::Pass, holds && hyps.iter().all(|h| *h));
        }
    }
}
