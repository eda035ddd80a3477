//! State-operators on finite BL-algebras: verification, exhaustive
//! enumeration, kernels and state-filters, the stock operator families and
//! the classification of state BL-algebras.

mod classify;
mod consequences;
mod enumerate;
mod families;
mod mv;
mod state_filters;
mod verify;

pub use classify::{
    classify_state_algebra, failed_claims, search_nonstrong, NonStrongSearch, StateAlgebraClassification,
};
pub use consequences::{arrow_checks, consequence_checks, linear_checks, strong_checks, CONSEQUENCE_CLAIMS};
pub use enumerate::{brute_force_operators, enumerate_operators, enumerate_operators_with, SearchClass};
pub use families::{
    coverage_gap, coverage_report, covers_upper, godel_checks, godel_lower_threshold, godel_threshold,
    godel_threshold_family, idempotent_operator, idempotents, subset_operator, summand_checks, summand_shape,
    SummandShape, FAMILY_ENUMERATION_LIMIT,
};
pub use mv::{mv_axioms_hold, mv_equivalence_check, mv_exhaustive_scan, mv_violation, MvAxiom, MvEquivalence};
pub use state_filters::{
    is_maximal_state_filter_by_criterion, kernel, kernel_and_faithfulness, maximal_state_filters, rad_sigma,
    radical_faithful, state_filter_checks, state_filter_extension, state_filter_generated,
    state_filter_generated_by_fixpoint, state_filters, KernelReport,
};
pub use verify::{verify_operator, OperatorAxiom, OperatorVerdict, OperatorViolation};

use serde::Serialize;

use crate::algebra::{AlgebraError, BlAlgebra, ElementId, Subalgebra};
use crate::set::ElementSet;

/// The strongest operator class whose axioms hold at every point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorClass {
    None,
    State,
    Strong,
    Morphism,
}

impl OperatorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OperatorClass::None => "none",
            OperatorClass::State => "state",
            OperatorClass::Strong => "strong",
            OperatorClass::Morphism => "morphism",
        }
    }
}

/// A unary map on an algebra's carrier together with its verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateOperator {
    map: Vec<ElementId>,
    verdict: OperatorVerdict,
}

impl StateOperator {
    /// Verifies `map` against every operator axiom.
    pub fn new(a: &BlAlgebra, map: Vec<ElementId>) -> Result<StateOperator, AlgebraError> {
        verify_operator(a, map)
    }

    pub fn identity(a: &BlAlgebra) -> StateOperator {
        StateOperator::new(a, a.elements().collect()).expect("identity map is well-formed")
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x]
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    pub fn verdict(&self) -> &OperatorVerdict {
        &self.verdict
    }

    pub fn class(&self) -> OperatorClass {
        self.verdict.class
    }

    pub fn is_state(&self) -> bool {
        self.verdict.state
    }

    pub fn is_strong(&self) -> bool {
        self.verdict.strong
    }

    pub fn is_morphism(&self) -> bool {
        self.verdict.morphism
    }

    pub fn preserves_impl(&self) -> bool {
        self.verdict.preserves_impl
    }

    /// Fixed points, ascending.
    pub fn fixed_points(&self) -> Vec<ElementId> {
        (0..self.map.len()).filter(|&x| self.map[x] == x).collect()
    }

    pub fn image_set(&self) -> ElementSet {
        ElementSet::from_elements(self.map.len(), self.map.iter().copied())
    }

    /// `σ(A)` as a subalgebra, elements in ascending original index.
    pub fn image(&self, a: &BlAlgebra) -> Result<Subalgebra, AlgebraError> {
        a.subalgebra(&self.image_set().to_vec())
    }

    /// `s ↦ s∘σ` on subsets: the preimage of `set`.
    pub fn preimage(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.map.len(), (0..self.map.len()).filter(|&x| set.contains(self.map[x])))
    }

    /// Map rendered with labels, e.g. `[0, a, 1, 1]`.
    pub fn labels(&self, a: &BlAlgebra) -> Vec<String> {
        self.map.iter().map(|&y| a.label(y).to_owned()).collect()
    }
}
