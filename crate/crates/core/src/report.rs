use serde::Serialize;

use crate::algebra::{BlAlgebra, ElementId};

/// Outcome of evaluating one claim on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The claim's hypotheses do not hold on this instance.
    Inapplicable,
    /// A discrepancy outside the claim's stated hypotheses; reported, not failed.
    Logged,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
            Verdict::Logged => "logged",
        }
    }
}

/// A claim evaluated on a concrete algebra, with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub claim: &'static str,
    pub verdict: Verdict,
    pub witness: Vec<ElementId>,
    pub note: String,
}

impl Check {
    pub fn pass(claim: &'static str) -> Self {
        Check { claim, verdict: Verdict::Pass, witness: Vec::new(), note: String::new() }
    }

    pub fn fail(claim: &'static str, witness: Vec<ElementId>, note: impl Into<String>) -> Self {
        Check { claim, verdict: Verdict::Fail, witness, note: note.into() }
    }

    pub fn inapplicable(claim: &'static str, why: impl Into<String>) -> Self {
        Check { claim, verdict: Verdict::Inapplicable, witness: Vec::new(), note: why.into() }
    }

    pub fn logged(claim: &'static str, witness: Vec<ElementId>, note: impl Into<String>) -> Self {
        Check { claim, verdict: Verdict::Logged, witness, note: note.into() }
    }

    /// Pass when `witness` is `None`, otherwise fail with the witness.
    pub fn from_witness(
        claim: &'static str,
        witness: Option<Vec<ElementId>>,
        note: impl FnOnce(&[ElementId]) -> String,
    ) -> Self {
        match witness {
            None => Check::pass(claim),
            Some(w) => {
                let n = note(&w);
                Check::fail(claim, w, n)
            }
        }
    }

    pub fn from_bool(claim: &'static str, ok: bool, note: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(claim)
        } else {
            Check::fail(claim, Vec::new(), note())
        }
    }

    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    /// Witness rendered with the algebra's labels.
    pub fn witness_labels(&self, algebra: &BlAlgebra) -> Vec<String> {
        self.witness.iter().map(|&x| algebra.label(x).to_owned()).collect()
    }

    /// Prefixes the note, e.g. with the operator the check ran against.
    pub fn with_context(mut self, context: &str) -> Self {
        if !context.is_empty() {
            self.note = if self.note.is_empty() { context.to_owned() } else { format!("{context}: {}", self.note) };
        }
        self
    }
}

/// Returns the first failing check, if any.
pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| c.is_failure())
}
