//! Extremal states from maximal-filter quotients, cross-checked against the
//! vertices of the state polytope, and convex hull membership.

use num_traits::{One, Signed, Zero};

use super::linear::{solve, vertices_in_unit_box, Equation, Q};
use super::{check_values, rational, RationalState};
use crate::algebra::{AlgebraError, BlAlgebra};
use crate::constructors::quotient_by_filter;
use crate::filters::{maximal_filters, Filter};
use crate::report::Check;

/// The linear part of the Bosbach definition: `s(0) = 0`, `s(1) = 1` and
/// `s(x) + s(x→y) = s(y) + s(y→x)` for every pair.
pub fn bosbach_equations(a: &BlAlgebra) -> Vec<Equation> {
    let n = a.size();
    let mut eqs = vec![Equation::fix(n, a.bottom(), Q::zero()), Equation::fix(n, a.top(), Q::one())];
    for x in a.elements() {
        for y in (x + 1)..n {
            let mut coeffs = vec![Q::zero(); n];
            coeffs[x] += Q::one();
            coeffs[a.imp(x, y)] += Q::one();
            coeffs[y] -= Q::one();
            coeffs[a.imp(y, x)] -= Q::one();
            if coeffs.iter().any(|c| !c.is_zero()) {
                eqs.push(Equation { coeffs, rhs: Q::zero() });
            }
        }
    }
    eqs
}

/// Vertices of the set of all states, or `None` when the vertex search is
/// too large.
pub fn state_polytope_vertices(a: &BlAlgebra) -> Option<Vec<RationalState>> {
    polytope_vertices(a, bosbach_equations(a))
}

pub(crate) fn polytope_vertices(a: &BlAlgebra, eqs: Vec<Equation>) -> Option<Vec<RationalState>> {
    let v = vertices_in_unit_box(a.size(), &eqs)?;
    Some(v.into_iter().map(RationalState::from_values).collect())
}

#[derive(Clone, Debug)]
pub struct StateSpaceDescription {
    /// One extremal state per maximal filter, in the order of
    /// [`maximal_filters`].
    pub extremal_states: Vec<RationalState>,
    pub filters: Vec<Filter>,
    /// The polytope vertices, when the search is small enough.
    pub vertices: Option<Vec<RationalState>>,
    pub checks: Vec<Check>,
}

/// The state `x ↦ i/k` where `x/F` is the `i`-th element of the
/// `(k+1)`-element chain `A/F`.
fn quotient_state(a: &BlAlgebra, f: &Filter) -> Result<RationalState, AlgebraError> {
    let q = quotient_by_filter(a, f)?;
    let order = q.algebra.chain_order();
    let k = order.len() as i64 - 1;
    let mut position = vec![0i64; order.len()];
    for (i, &c) in order.iter().enumerate() {
        position[c] = i as i64;
    }
    Ok(RationalState::from_values(a.elements().map(|x| rational(position[q.projection[x]], k)).collect()))
}

pub fn extremal_states(a: &BlAlgebra) -> StateSpaceDescription {
    let filters = maximal_filters(a);
    let extremal_states: Vec<RationalState> =
        filters.iter().map(|f| quotient_state(a, f).expect("quotient by a maximal filter is a chain")).collect();
    let mut checks = Vec::new();

    let failing = extremal_states.iter().position(|s| !check_values(a, s.values(), &filters).extremal);
    checks.push(Check::from_bool("states.quotient-extremal", failing.is_none(), || {
        format!("quotient state {} is not extremal", extremal_states[failing.unwrap_or(0)])
    }));
    let mut sorted = extremal_states.clone();
    sorted.sort();
    sorted.dedup();
    checks.push(Check::from_bool("states.quotient-distinct", sorted.len() == extremal_states.len(), || {
        "two maximal filters give the same state".into()
    }));

    let vertices = state_polytope_vertices(a);
    checks.push(match &vertices {
        Some(v) => Check::from_bool("states.extremal-vertices", *v == sorted, || {
            format!("{} polytope vertices, {} quotient states", v.len(), sorted.len())
        }),
        None => Check::inapplicable("states.extremal-vertices", "vertex search too large"),
    });

    StateSpaceDescription { extremal_states, filters, vertices, checks }
}

/// `Σ λ_i s_i`
pub fn mix(states: &[RationalState], weights: &[Q]) -> RationalState {
    let n = states.first().map_or(0, RationalState::len);
    let values = (0..n).map(|x| states.iter().zip(weights).fold(Q::zero(), |acc, (s, w)| acc + w * s.get(x))).collect();
    RationalState::from_values(values)
}

/// Nonnegative weights summing to 1 that express `s` as a mixture of
/// `generators`, if the solution of that system is unique and nonnegative.
pub fn hull_coefficients(generators: &[RationalState], s: &RationalState) -> Option<Vec<Q>> {
    let m = generators.len();
    let mut eqs: Vec<Equation> = (0..s.len())
        .map(|x| Equation { coeffs: generators.iter().map(|g| g.get(x).clone()).collect(), rhs: s.get(x).clone() })
        .collect();
    eqs.push(Equation { coeffs: vec![Q::one(); m], rhs: Q::one() });
    let space = solve(m, &eqs)?;
    if !space.directions.is_empty() || space.point.iter().any(Signed::is_negative) {
        return None;
    }
    Some(space.point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{direct_product, four_element, mv_chain};

    fn strings(s: &RationalState) -> Vec<String> {
        s.to_strings()
    }

    #[test]
    fn chain_has_one_extremal_state() {
        let d = extremal_states(&mv_chain(4));
        assert_eq!(d.extremal_states.len(), 1);
        assert_eq!(strings(&d.extremal_states[0]), ["0", "1/4", "1/2", "3/4", "1"]);
        assert!(d.checks.iter().all(|c| !c.is_failure()));
    }

    #[test]
    fn four_element_extremal_state() {
        let (a, _) = four_element();
        let d = extremal_states(&a);
        assert_eq!(d.extremal_states.len(), 1);
        assert_eq!(strings(&d.extremal_states[0]), ["0", "1/2", "1", "1"]);
        assert_eq!(d.filters[0].labels(&a), ["b", "1"]);
    }

    #[test]
    fn square_has_coordinate_projections() {
        let b = mv_chain(1);
        let a = direct_product(&b, &b);
        let d = extremal_states(&a);
        let mut got: Vec<Vec<String>> = d.extremal_states.iter().map(strings).collect();
        got.sort();
        assert_eq!(got, [vec!["0", "0", "1", "1"], vec!["0", "1", "0", "1"]]);
        assert!(d.checks.iter().all(|c| !c.is_failure()));
    }

    #[test]
    fn hull_of_mixture() {
        let b = mv_chain(2);
        let a = direct_product(&b, &b);
        let d = extremal_states(&a);
        let w = vec![rational(1, 3), rational(2, 3)];
        let s = mix(&d.extremal_states, &w);
        assert_eq!(hull_coefficients(&d.extremal_states, &s), Some(w));
        let outside = RationalState::from_values(vec![rational(1, 2); a.size()]);
        assert_eq!(hull_coefficients(&d.extremal_states, &outside), None);
    }
}
