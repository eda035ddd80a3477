//! The MV-algebra form of the operator axioms and its agreement with the
//! BL form on involutive algebras.

use rayon::prelude::*;

use super::verify::OperatorAxiom;
use super::StateOperator;
use crate::algebra::{AlgebraError, BlAlgebra, ElementId};
use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MvAxiom {
    /// `σ(1) = 1`
    TopFixed,
    /// `σ(x⁻) = σ(x)⁻`
    NegCommute,
    /// `σ(x⊕y) = σ(x) ⊕ σ(y ⊖ (x⊙y))`
    OplusSplit,
    /// `σ(σx ⊕ σy) = σx ⊕ σy`
    ImageOplus,
}

impl MvAxiom {
    pub const ALL: [MvAxiom; 4] = [MvAxiom::TopFixed, MvAxiom::NegCommute, MvAxiom::OplusSplit, MvAxiom::ImageOplus];

    pub fn name(self) -> &'static str {
        match self {
            MvAxiom::TopFixed => "mv-top-fixed",
            MvAxiom::NegCommute => "mv-neg-commute",
            MvAxiom::OplusSplit => "mv-oplus-split",
            MvAxiom::ImageOplus => "mv-image-oplus",
        }
    }

    fn holds_at(self, a: &BlAlgebra, s: &[ElementId], x: ElementId, y: ElementId) -> bool {
        match self {
            MvAxiom::TopFixed => s[a.top()] == a.top(),
            MvAxiom::NegCommute => s[a.neg(x)] == a.neg(s[x]),
            MvAxiom::OplusSplit => s[a.oplus(x, y)] == a.oplus(s[x], s[a.ominus(y, a.prod(x, y))]),
            MvAxiom::ImageOplus => {
                let p = a.oplus(s[x], s[y]);
                s[p] == p
            }
        }
    }
}

/// First failing MV axiom with its witness (`[]`, `[x]` or `[x, y]`).
pub fn mv_violation(a: &BlAlgebra, s: &[ElementId]) -> Option<(MvAxiom, Vec<ElementId>)> {
    let n = a.size();
    for axiom in MvAxiom::ALL {
        match axiom {
            MvAxiom::TopFixed => {
                if !axiom.holds_at(a, s, 0, 0) {
                    return Some((axiom, Vec::new()));
                }
            }
            MvAxiom::NegCommute => {
                if let Some(x) = (0..n).find(|&x| !axiom.holds_at(a, s, x, x)) {
                    return Some((axiom, vec![x]));
                }
            }
            _ => {
                for x in 0..n {
                    for y in 0..n {
                        if !axiom.holds_at(a, s, x, y) {
                            return Some((axiom, vec![x, y]));
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn mv_axioms_hold(a: &BlAlgebra, s: &[ElementId]) -> bool {
    mv_violation(a, s).is_none()
}

fn require_mv(a: &BlAlgebra) -> Result<(), AlgebraError> {
    match a.elements().find(|&x| a.neg(a.neg(x)) != x) {
        Some(x) => Err(AlgebraError::NotMv(format!("{} is not its double negation", a.label(x)))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub struct MvEquivalence {
    pub mv_axioms: bool,
    pub bl_state: bool,
    pub strong: bool,
    pub checks: Vec<Check>,
}

/// Compares the two axiom systems on one map and checks strength and
/// additivity on orthogonal pairs when the map is a state-operator.
pub fn mv_equivalence_check(a: &BlAlgebra, sigma: &StateOperator) -> Result<MvEquivalence, AlgebraError> {
    require_mv(a)?;
    let s = sigma.map();
    let violation = mv_violation(a, s);
    let mv_axioms = violation.is_none();
    let bl_state = sigma.is_state();
    let mut checks = vec![Check::from_bool("mv.axiom-equivalence", mv_axioms == bl_state, || match &violation {
        Some((ax, w)) => format!("BL axioms hold but {} fails at {w:?}", ax.name()),
        None => "MV axioms hold but the BL axioms do not".into(),
    })];
    if bl_state {
        checks.push(Check::from_witness(
            "mv.strong",
            sigma.verdict().violation(OperatorAxiom::ProdStrong).map(|v| v.witness.clone()),
            |_| "state-operator on an MV-algebra that is not strong".into(),
        ));
        let additive = a
            .elements()
            .flat_map(|x| a.elements().map(move |y| (x, y)))
            .find(|&(x, y)| a.partial_sum(x, y).is_some_and(|sum| Some(s[sum]) != a.partial_sum(s[x], s[y])));
        checks.push(Check::from_witness("mv.additive", additive.map(|(x, y)| vec![x, y]), |_| {
            "σ(x + y) differs from σ(x) + σ(y) on an orthogonal pair".into()
        }));
    } else {
        checks.push(Check::inapplicable("mv.strong", "map is not a state-operator"));
        checks.push(Check::inapplicable("mv.additive", "map is not a state-operator"));
    }
    Ok(MvEquivalence { mv_axioms, bl_state, strong: sigma.is_strong(), checks })
}

fn bl_state_holds(a: &BlAlgebra, map: &[ElementId]) -> bool {
    OperatorAxiom::STATE.iter().all(|ax| ax.first_violation(a, map).is_none())
}

/// Scans every map `A → A` and returns the first, in lexicographic order,
/// on which the MV and BL axiom systems disagree. Also returns how many
/// maps satisfy both.
pub fn mv_exhaustive_scan(a: &BlAlgebra) -> Result<(usize, Option<Vec<ElementId>>), AlgebraError> {
    require_mv(a)?;
    let n = a.size();
    let rest = n.checked_pow(n as u32 - 1).expect("carrier too large for an exhaustive scan");
    let per_first: Vec<(usize, Option<Vec<ElementId>>)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut map = vec![0; n];
            let mut agree = 0;
            for code in 0..rest {
                map[0] = first;
                let mut c = code;
                for i in (1..n).rev() {
                    map[i] = c % n;
                    c /= n;
                }
                let mv = mv_axioms_hold(a, &map);
                let bl = bl_state_holds(a, &map);
                if mv != bl {
                    return (agree, Some(map));
                }
                agree += usize::from(mv);
            }
            (agree, None)
        })
        .collect();
    let count = per_first.iter().map(|(c, _)| c).sum();
    Ok((count, per_first.into_iter().find_map(|(_, m)| m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{diagonal_operator, direct_product, four_element, mv_chain, Coordinate};
    use crate::operators::{enumerate_operators, SearchClass};

    #[test]
    fn identity_on_chain() {
        let a = mv_chain(4);
        let r = mv_equivalence_check(&a, &StateOperator::identity(&a)).unwrap();
        assert!(r.mv_axioms && r.bl_state && r.strong);
        assert!(r.checks.iter().all(|c| !c.is_failure()));
    }

    #[test]
    fn diagonal_on_square_of_three_chain() {
        let (a, s) = diagonal_operator(&mv_chain(2), Coordinate::First);
        let r = mv_equivalence_check(&a, &s).unwrap();
        assert!(r.mv_axioms && r.bl_state && r.strong);
        assert!(r.checks.iter().all(|c| !c.is_failure()));
    }

    #[test]
    fn rejects_non_mv() {
        let (a, s) = four_element();
        assert!(matches!(mv_equivalence_check(&a, &s), Err(AlgebraError::NotMv(_))));
    }

    #[test]
    fn exhaustive_scan_on_small_products() {
        let b = mv_chain(1);
        let a = direct_product(&b, &b);
        let (count, disagreement) = mv_exhaustive_scan(&a).unwrap();
        assert_eq!(disagreement, None);
        assert_eq!(count, enumerate_operators(&a, SearchClass::State).len());
    }
}
