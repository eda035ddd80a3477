//! Derived properties every state-operator must have, evaluated on a raw
//! map so they can also explain why a candidate is rejected.

use crate::algebra::{BlAlgebra, ElementId};
use crate::filters::radical_by_formula;
use crate::report::Check;

/// Claim ids of [`consequence_checks`], in evaluation order.
pub const CONSEQUENCE_CLAIMS: [&str; 18] = [
    "op.top-fixed",
    "op.neg-commute",
    "op.monotone",
    "op.prod-lower-bound",
    "op.ominus-bound",
    "op.meet-split",
    "op.impl-upper-bound",
    "op.dist-bound",
    "op.oplus-bound",
    "op.idempotent",
    "op.image-subalgebra",
    "op.image-fixed-points",
    "op.order-decrease",
    "op.impl-symmetry",
    "op.surjective-identity",
    "op.faithful-strict",
    "op.faithful-incomparable",
    "op.faithful-linear-identity",
];

fn pairs(n: usize) -> impl Iterator<Item = (ElementId, ElementId)> {
    (0..n * n).map(move |k| (k / n, k % n))
}

fn find_pair(a: &BlAlgebra, mut bad: impl FnMut(ElementId, ElementId) -> bool) -> Option<Vec<ElementId>> {
    pairs(a.size()).find(|&(x, y)| bad(x, y)).map(|(x, y)| vec![x, y])
}

fn find_one(a: &BlAlgebra, mut bad: impl FnMut(ElementId) -> bool) -> Option<Vec<ElementId>> {
    a.elements().find(|&x| bad(x)).map(|x| vec![x])
}

fn is_faithful(a: &BlAlgebra, s: &[ElementId]) -> bool {
    a.elements().all(|x| s[x] != a.top() || x == a.top())
}

/// The properties shared by all state-operators, one check each, in the
/// order of [`CONSEQUENCE_CLAIMS`].
pub fn consequence_checks(a: &BlAlgebra, s: &[ElementId]) -> Vec<Check> {
    let n = a.size();
    let (top, bottom) = (a.top(), a.bottom());
    let mut out = Vec::with_capacity(18);

    out.push(Check::from_witness("op.top-fixed", (s[top] != top).then(|| vec![top]), |_| "s(1) != 1".into()));
    out.push(Check::from_witness("op.neg-commute", find_one(a, |x| s[a.neg(x)] != a.neg(s[x])), |_| {
        "s(-x) != -s(x)".into()
    }));
    out.push(Check::from_witness("op.monotone", find_pair(a, |x, y| a.leq(x, y) && !a.leq(s[x], s[y])), |_| {
        "x <= y but s(x) is not below s(y)".into()
    }));

    let prod_bad = |x: ElementId, y: ElementId| {
        let xy = a.prod(x, y);
        let lower = a.prod(s[x], s[y]);
        !a.leq(lower, s[xy]) || (xy == bottom && s[xy] != lower)
    };
    let squares_first = (0..n).find(|&x| prod_bad(x, x)).map(|x| vec![x, x]).or_else(|| find_pair(a, prod_bad));
    out.push(Check::from_witness("op.prod-lower-bound", squares_first, |w| {
        let xy = a.prod(w[0], w[1]);
        format!(
            "s(x*y) = s({}) = {} but s(x)*s(y) = {}",
            a.label(xy),
            a.label(s[xy]),
            a.label(a.prod(s[w[0]], s[w[1]]))
        )
    }));

    out.push(Check::from_witness(
        "op.ominus-bound",
        find_pair(a, |x, y| {
            let lhs = s[a.ominus(x, y)];
            let rhs = a.ominus(s[x], s[y]);
            !a.leq(rhs, lhs) || (a.leq(x, y) && lhs != rhs)
        }),
        |_| "s(x - y) below s(x) - s(y), or unequal for x <= y".into(),
    ));
    out.push(Check::from_witness(
        "op.meet-split",
        find_pair(a, |x, y| s[a.meet(x, y)] != a.prod(s[x], s[a.imp(x, y)])),
        |_| "s(x&y) != s(x) * s(x->y)".into(),
    ));
    out.push(Check::from_witness(
        "op.impl-upper-bound",
        find_pair(a, |x, y| {
            let lhs = s[a.imp(x, y)];
            let rhs = a.imp(s[x], s[y]);
            !a.leq(lhs, rhs) || (a.comparable(x, y) && lhs != rhs)
        }),
        |_| "s(x->y) above s(x)->s(y), or unequal for comparable x, y".into(),
    ));
    out.push(Check::from_witness(
        "op.dist-bound",
        find_pair(a, |x, y| !a.leq(a.prod(s[a.imp(x, y)], s[a.imp(y, x)]), a.dist(s[x], s[y]))),
        |_| "s(x->y)*s(y->x) above d(s(x), s(y))".into(),
    ));
    out.push(Check::from_witness(
        "op.oplus-bound",
        find_pair(a, |x, y| {
            let lhs = a.oplus(s[x], s[y]);
            let rhs = s[a.oplus(x, y)];
            !a.leq(rhs, lhs) || (a.oplus(x, y) == top && (lhs != top || rhs != top))
        }),
        |_| "s(x) + s(y) below s(x + y), or not 1 when x + y = 1".into(),
    ));
    out.push(Check::from_witness("op.idempotent", find_one(a, |x| s[s[x]] != s[x]), |_| "s(s(x)) != s(x)".into()));

    let in_image = |z: ElementId| s.contains(&z);
    let leaves = if !in_image(bottom) || !in_image(top) {
        Some(vec![])
    } else {
        pairs(n)
            .filter(|&(x, y)| in_image(x) && in_image(y))
            .find(|&(x, y)| [a.meet(x, y), a.join(x, y), a.prod(x, y), a.imp(x, y)].into_iter().any(|z| !in_image(z)))
            .map(|(x, y)| vec![x, y])
    };
    out.push(Check::from_witness("op.image-subalgebra", leaves, |_| "image not closed under the operations".into()));
    out.push(Check::from_witness("op.image-fixed-points", find_one(a, |x| in_image(x) != (s[x] == x)), |_| {
        "image differs from the fixed points".into()
    }));

    if a.is_trivial() {
        out.push(Check::inapplicable("op.order-decrease", "one-element algebra"));
    } else {
        let rad = radical_by_formula(a);
        out.push(Check::from_witness(
            "op.order-decrease",
            find_one(a, |x| a.ord(x).is_finite() && (a.ord(s[x]) > a.ord(x) || rad.contains(s[x]))),
            |_| "finite-order x with ord(s(x)) > ord(x) or s(x) in the radical".into(),
        ));
    }
    out.push(Check::from_witness(
        "op.impl-symmetry",
        find_pair(a, |x, y| (s[a.imp(x, y)] == a.imp(s[x], s[y])) != (s[a.imp(y, x)] == a.imp(s[y], s[x]))),
        |_| "s preserves x->y but not y->x".into(),
    ));

    let surjective = a.elements().all(in_image);
    out.push(if surjective {
        Check::from_witness("op.surjective-identity", find_one(a, |x| s[x] != x), |_| {
            "surjective but not the identity".into()
        })
    } else {
        Check::inapplicable("op.surjective-identity", "not surjective")
    });

    let faithful = is_faithful(a, s);
    if faithful {
        out.push(Check::from_witness(
            "op.faithful-strict",
            find_pair(a, |x, y| a.lt(x, y) && !a.lt(s[x], s[y])),
            |_| "x < y but not s(x) < s(y)".into(),
        ));
        out.push(Check::from_witness(
            "op.faithful-incomparable",
            find_one(a, |x| s[x] != x && a.comparable(s[x], x)),
            |_| "s(x) != x yet comparable with x".into(),
        ));
        if a.is_linear() {
            out.push(Check::from_witness("op.faithful-linear-identity", find_one(a, |x| s[x] != x), |_| {
                "faithful on a chain but not the identity".into()
            }));
        } else {
            out.push(Check::inapplicable("op.faithful-linear-identity", "algebra is not linear"));
        }
    } else {
        out.push(Check::inapplicable("op.faithful-strict", "kernel is not {1}"));
        out.push(Check::inapplicable("op.faithful-incomparable", "kernel is not {1}"));
        out.push(Check::inapplicable("op.faithful-linear-identity", "kernel is not {1}"));
    }
    out
}

/// The extra properties of strong operators.
pub fn strong_checks(a: &BlAlgebra, s: &[ElementId]) -> Vec<Check> {
    vec![
        Check::from_witness(
            "strong.prod-equality",
            find_pair(a, |x, y| {
                let lhs = s[a.prod(x, y)];
                let rhs = a.prod(s[x], s[y]);
                !a.leq(rhs, lhs) || (a.leq(a.neg(x), y) && lhs != rhs)
            }),
            |_| "s(x*y) != s(x)*s(y) although -x <= y".into(),
        ),
        Check::from_witness(
            "strong.ominus-comparable",
            find_pair(a, |x, y| {
                let lhs = s[a.ominus(x, y)];
                let rhs = a.ominus(s[x], s[y]);
                !a.leq(rhs, lhs) || (a.comparable(x, y) && lhs != rhs)
            }),
            |_| "s(x - y) != s(x) - s(y) for comparable x, y".into(),
        ),
        Check::from_witness(
            "strong.cross-symmetry",
            find_one(a, |x| {
                let nx = a.neg(x);
                s[a.prod(x, s[nx])] != s[a.prod(nx, s[x])]
            }),
            |_| "s(x * s(-x)) != s(-x * s(x))".into(),
        ),
    ]
}

/// The first pair where `s` fails to preserve one of the lattice, monoid or
/// residuum operations, or a constant.
pub(crate) fn endomorphism_defect(a: &BlAlgebra, s: &[ElementId]) -> Option<Vec<ElementId>> {
    if s[a.bottom()] != a.bottom() || s[a.top()] != a.top() {
        return Some(vec![]);
    }
    find_pair(a, |x, y| {
        s[a.prod(x, y)] != a.prod(s[x], s[y])
            || s[a.imp(x, y)] != a.imp(s[x], s[y])
            || s[a.meet(x, y)] != a.meet(s[x], s[y])
            || s[a.join(x, y)] != a.join(s[x], s[y])
    })
}

/// Preservation of `→` against preservation of `∧`, `∨` and `⊙`.
pub fn arrow_checks(a: &BlAlgebra, s: &[ElementId]) -> Vec<Check> {
    let keeps_imp = |x: ElementId, y: ElementId| s[a.imp(x, y)] == a.imp(s[x], s[y]);
    let keeps_meet = |x: ElementId, y: ElementId| s[a.meet(x, y)] == a.meet(s[x], s[y]);
    let keeps_join = |x: ElementId, y: ElementId| s[a.join(x, y)] == a.join(s[x], s[y]);
    let all_imp = pairs(a.size()).all(|(x, y)| keeps_imp(x, y));
    let all_join = pairs(a.size()).all(|(x, y)| keeps_join(x, y));
    let mut out = vec![
        Check::from_witness("op.impl-iff-meet", find_pair(a, |x, y| keeps_imp(x, y) != keeps_meet(x, y)), |_| {
            "preservation of x->y and of x&y differ at this pair".into()
        }),
        Check::from_bool("op.impl-iff-join", all_imp == all_join, || {
            format!("preserves impl: {all_imp}, preserves join: {all_join}")
        }),
    ];
    out.push(if all_imp {
        Check::from_witness(
            "op.impl-implies-prod",
            endomorphism_defect(a, s).or_else(|| find_one(a, |x| s[s[x]] != s[x])),
            |_| "preserves impl but is not an idempotent endomorphism".into(),
        )
    } else {
        Check::inapplicable("op.impl-implies-prod", "does not preserve impl")
    });
    out
}

/// Properties of operators on linearly ordered algebras.
pub fn linear_checks(a: &BlAlgebra, s: &[ElementId], strong: bool) -> Vec<Check> {
    if !a.is_linear() {
        return ["linear.preserves-impl", "linear.strong-multiplicative", "linear.endomorphism"]
            .into_iter()
            .map(|c| Check::inapplicable(c, "algebra is not linear"))
            .collect();
    }
    vec![
        Check::from_witness("linear.preserves-impl", find_pair(a, |x, y| s[a.imp(x, y)] != a.imp(s[x], s[y])), |_| {
            "s(x->y) != s(x)->s(y) on a chain".into()
        }),
        if strong {
            Check::from_witness(
                "linear.strong-multiplicative",
                find_pair(a, |x, y| s[a.prod(x, y)] != a.prod(s[x], s[y])),
                |_| "strong operator on a chain that does not preserve the product".into(),
            )
        } else {
            Check::inapplicable("linear.strong-multiplicative", "operator is not strong")
        },
        Check::from_witness(
            "linear.endomorphism",
            endomorphism_defect(a, s).or_else(|| find_one(a, |x| s[s[x]] != s[x])),
            |_| "not an idempotent endomorphism".into(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{four_element, godel_chain};

    #[test]
    fn claims_line_up() {
        let (a, s) = four_element();
        let checks = consequence_checks(&a, s.map());
        let ids: Vec<&str> = checks.iter().map(|c| c.claim).collect();
        assert_eq!(ids, CONSEQUENCE_CLAIMS);
        assert!(checks.iter().all(|c| !c.is_failure()));
    }

    #[test]
    fn non_monotone_map_is_caught() {
        let a = godel_chain(4);
        let map = vec![0, 2, 1, 3];
        let checks = consequence_checks(&a, &map);
        let mono = checks.iter().find(|c| c.claim == "op.monotone").unwrap();
        assert!(mono.is_failure());
        assert_eq!(mono.witness, vec![1, 2]);
    }

    #[test]
    fn godel_threshold_passes_linear_checks() {
        let a = godel_chain(4);
        let map = vec![0, 1, 3, 3];
        assert!(linear_checks(&a, &map, true).iter().all(|c| !c.is_failure()));
        assert!(arrow_checks(&a, &map).iter().all(|c| !c.is_failure()));
    }
}
