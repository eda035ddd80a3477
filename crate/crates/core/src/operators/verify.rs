use std::fmt;

use serde::Serialize;

use super::consequences::consequence_checks;
use super::{OperatorClass, StateOperator};
use crate::algebra::{AlgebraError, BlAlgebra, ElementId};
use crate::report::Check;

/// The defining identities of the operator classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorAxiom {
    /// `σ(0) = 0`
    FixesBottom,
    /// `σ(x→y) = σx → σ(x∧y)`
    ImplMeet,
    /// `σ(x⊙y) = σx ⊙ σ(x → x⊙y)`
    ProdResidual,
    /// `σ(x⊙y) = σx ⊙ σ(x⁻∨y)`
    ProdStrong,
    /// `σ(σx⊙σy) = σx⊙σy`
    ImageProd,
    /// `σ(σx→σy) = σx→σy`
    ImageImpl,
    /// `σ(x⊙y) = σx⊙σy`
    ProdMorphism,
    /// `σ(x→y) = σx→σy`
    ImplMorphism,
}

impl OperatorAxiom {
    pub const ALL: [OperatorAxiom; 8] = [
        OperatorAxiom::FixesBottom,
        OperatorAxiom::ImplMeet,
        OperatorAxiom::ProdResidual,
        OperatorAxiom::ProdStrong,
        OperatorAxiom::ImageProd,
        OperatorAxiom::ImageImpl,
        OperatorAxiom::ProdMorphism,
        OperatorAxiom::ImplMorphism,
    ];

    pub const STATE: [OperatorAxiom; 5] = [
        OperatorAxiom::FixesBottom,
        OperatorAxiom::ImplMeet,
        OperatorAxiom::ProdResidual,
        OperatorAxiom::ImageProd,
        OperatorAxiom::ImageImpl,
    ];

    pub const STRONG: [OperatorAxiom; 5] = [
        OperatorAxiom::FixesBottom,
        OperatorAxiom::ImplMeet,
        OperatorAxiom::ProdStrong,
        OperatorAxiom::ImageProd,
        OperatorAxiom::ImageImpl,
    ];

    pub const MORPHISM: [OperatorAxiom; 5] = [
        OperatorAxiom::FixesBottom,
        OperatorAxiom::ImplMeet,
        OperatorAxiom::ImageProd,
        OperatorAxiom::ImageImpl,
        OperatorAxiom::ProdMorphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorAxiom::FixesBottom => "fixes-bottom",
            OperatorAxiom::ImplMeet => "impl-meet",
            OperatorAxiom::ProdResidual => "prod-residual",
            OperatorAxiom::ProdStrong => "prod-strong",
            OperatorAxiom::ImageProd => "image-prod",
            OperatorAxiom::ImageImpl => "image-impl",
            OperatorAxiom::ProdMorphism => "prod-morphism",
            OperatorAxiom::ImplMorphism => "impl-morphism",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            OperatorAxiom::FixesBottom => "s(0) = 0",
            OperatorAxiom::ImplMeet => "s(x->y) = s(x) -> s(x&y)",
            OperatorAxiom::ProdResidual => "s(x*y) = s(x) * s(x -> x*y)",
            OperatorAxiom::ProdStrong => "s(x*y) = s(x) * s(-x | y)",
            OperatorAxiom::ImageProd => "s(s(x)*s(y)) = s(x)*s(y)",
            OperatorAxiom::ImageImpl => "s(s(x)->s(y)) = s(x)->s(y)",
            OperatorAxiom::ProdMorphism => "s(x*y) = s(x)*s(y)",
            OperatorAxiom::ImplMorphism => "s(x->y) = s(x)->s(y)",
        }
    }

    /// Number of free variables.
    pub fn arity(self) -> usize {
        match self {
            OperatorAxiom::FixesBottom => 0,
            _ => 2,
        }
    }

    /// Evaluates the identity at `(x, y)` under a possibly partial map.
    /// `None` means some needed value of `s` is not yet known.
    pub fn eval(
        self,
        a: &BlAlgebra,
        s: &impl Fn(ElementId) -> Option<ElementId>,
        x: ElementId,
        y: ElementId,
    ) -> Option<bool> {
        Some(match self {
            OperatorAxiom::FixesBottom => s(a.bottom())? == a.bottom(),
            OperatorAxiom::ImplMeet => s(a.imp(x, y))? == a.imp(s(x)?, s(a.meet(x, y))?),
            OperatorAxiom::ProdResidual => {
                let xy = a.prod(x, y);
                s(xy)? == a.prod(s(x)?, s(a.imp(x, xy))?)
            }
            OperatorAxiom::ProdStrong => s(a.prod(x, y))? == a.prod(s(x)?, s(a.join(a.neg(x), y))?),
            OperatorAxiom::ImageProd => {
                let p = a.prod(s(x)?, s(y)?);
                s(p)? == p
            }
            OperatorAxiom::ImageImpl => {
                let p = a.imp(s(x)?, s(y)?);
                s(p)? == p
            }
            OperatorAxiom::ProdMorphism => s(a.prod(x, y))? == a.prod(s(x)?, s(y)?),
            OperatorAxiom::ImplMorphism => s(a.imp(x, y))? == a.imp(s(x)?, s(y)?),
        })
    }

    /// First point, in lexicographic order, where a total map violates the identity.
    pub fn first_violation(self, a: &BlAlgebra, map: &[ElementId]) -> Option<Vec<ElementId>> {
        let s = |x: ElementId| Some(map[x]);
        if self.arity() == 0 {
            return (self.eval(a, &s, 0, 0) == Some(false)).then(Vec::new);
        }
        let n = a.size();
        (0..n * n)
            .map(|k| (k / n, k % n))
            .find(|&(x, y)| self.eval(a, &s, x, y) == Some(false))
            .map(|(x, y)| vec![x, y])
    }
}

impl fmt::Display for OperatorAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.name(), self.formula())
    }
}

/// An operator identity failing at a witness point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorViolation {
    pub axiom: OperatorAxiom,
    pub witness: Vec<ElementId>,
}

/// Which operator classes a map belongs to, with the first violation of
/// every identity that fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorVerdict {
    pub class: OperatorClass,
    pub state: bool,
    pub strong: bool,
    pub morphism: bool,
    pub preserves_impl: bool,
    pub violations: Vec<OperatorViolation>,
    /// Morphism implies strong implies state on this map.
    pub chain: Check,
    /// For maps that are not state-operators: the first derived property
    /// of state-operators that fails, which explains the rejection.
    pub diagnostic: Option<Check>,
}

impl OperatorVerdict {
    pub fn violation(&self, axiom: OperatorAxiom) -> Option<&OperatorViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }

    pub fn holds(&self, axiom: OperatorAxiom) -> bool {
        self.violation(axiom).is_none()
    }
}

/// Checks every operator identity at every point and assigns the strongest
/// class that holds.
pub fn verify_operator(a: &BlAlgebra, map: Vec<ElementId>) -> Result<StateOperator, AlgebraError> {
    if map.len() != a.size() {
        return Err(AlgebraError::Malformed(format!(
            "operator has {} entries, algebra has {} elements",
            map.len(),
            a.size()
        )));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= a.size()) {
        return Err(AlgebraError::Malformed(format!("operator value {v} out of range")));
    }
    let violations: Vec<OperatorViolation> = OperatorAxiom::ALL
        .iter()
        .filter_map(|&axiom| axiom.first_violation(a, &map).map(|witness| OperatorViolation { axiom, witness }))
        .collect();
    let holds = |ax: &[OperatorAxiom]| ax.iter().all(|x| !violations.iter().any(|v| v.axiom == *x));
    let state = holds(&OperatorAxiom::STATE);
    let strong = holds(&OperatorAxiom::STRONG);
    let morphism = holds(&OperatorAxiom::MORPHISM);
    let preserves_impl = holds(&[OperatorAxiom::ImplMorphism]);
    let class = if morphism {
        OperatorClass::Morphism
    } else if strong {
        OperatorClass::Strong
    } else if state {
        OperatorClass::State
    } else {
        OperatorClass::None
    };
    let chain = Check::from_bool("op.class-chain", (!morphism || strong) && (!strong || state), || {
        format!("state: {state}, strong: {strong}, morphism: {morphism}")
    });
    let diagnostic = if state { None } else { consequence_checks(a, &map).into_iter().find(|c| c.is_failure()) };
    Ok(StateOperator {
        map,
        verdict: OperatorVerdict { class, state, strong, morphism, preserves_impl, violations, chain, diagnostic },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{direct_product, four_element, godel_chain, mv_chain};

    #[test]
    fn identity_is_an_endomorphism() {
        for a in [mv_chain(3), godel_chain(4), four_element().0] {
            let id = StateOperator::identity(&a);
            assert_eq!(id.class(), OperatorClass::Morphism);
            assert!(id.preserves_impl());
            assert!(id.verdict().violations.is_empty());
        }
    }

    #[test]
    fn four_element_operator() {
        let (_, s) = four_element();
        assert_eq!(s.class(), OperatorClass::Morphism);
        assert!(s.preserves_impl());
        assert!(s.is_state() && s.is_strong());
    }

    #[test]
    fn constant_top_map_is_rejected() {
        let a = mv_chain(2);
        let op = verify_operator(&a, vec![2, 2, 2]).unwrap();
        assert_eq!(op.class(), OperatorClass::None);
        assert_eq!(op.verdict().violation(OperatorAxiom::FixesBottom).unwrap().witness, Vec::<usize>::new());
        assert!(op.verdict().diagnostic.is_some());
    }

    #[test]
    fn violations_re_evaluate_false() {
        let b = mv_chain(2);
        let a = direct_product(&b, &b);
        let map: Vec<_> = a.elements().map(|x| (x * 7 + 3) % a.size()).collect();
        let op = verify_operator(&a, map.clone()).unwrap();
        for v in &op.verdict().violations {
            let s = |x: usize| Some(map[x]);
            let (x, y) = if v.witness.is_empty() { (0, 0) } else { (v.witness[0], v.witness[1]) };
            assert_eq!(v.axiom.eval(&a, &s, x, y), Some(false));
        }
    }

    #[test]
    fn wrong_length_is_malformed() {
        let a = mv_chain(2);
        assert!(verify_operator(&a, vec![0, 1]).is_err());
        assert!(verify_operator(&a, vec![0, 1, 5]).is_err());
    }
}
