//! States on finite BL-algebras in exact rational arithmetic: the Bosbach
//! and Riečan definitions, state-morphisms, extremal states, pull-backs
//! along state-operators and σ-compatible states.

mod compat;
mod extremal;
pub mod linear;

pub use compat::{pull_back_state, sigma_compatible_correspondence, CompatibilityReport};
pub use extremal::{
    bosbach_equations, extremal_states, hull_coefficients, mix, state_polytope_vertices, StateSpaceDescription,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraError, BlAlgebra, ElementId};
use crate::filters::{maximal_filters, Filter};
use crate::report::Check;
use crate::set::ElementSet;
use linear::{rank, Equation, Q};

/// Parses `p/q` or `p` (optionally signed) into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(num, den))
}

/// `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rational(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// One rational value per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalState {
    values: Vec<Q>,
}

impl RationalState {
    /// Any map of the right length; whether it is a state is decided by
    /// [`check_state`].
    pub fn new(a: &BlAlgebra, values: Vec<Q>) -> Result<RationalState, AlgebraError> {
        if values.len() != a.size() {
            return Err(AlgebraError::Malformed(format!(
                "state has {} values, algebra has {} elements",
                values.len(),
                a.size()
            )));
        }
        Ok(RationalState { values })
    }

    pub fn parse(a: &BlAlgebra, values: &[&str]) -> Result<RationalState, AlgebraError> {
        let parsed = values.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>, _>>();
        RationalState::new(a, parsed.map_err(AlgebraError::Malformed)?)
    }

    pub(crate) fn from_values(values: Vec<Q>) -> RationalState {
        RationalState { values }
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn get(&self, x: ElementId) -> &Q {
        &self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(format_rational).collect()
    }

    /// `{x : s(x) = 1}`
    pub fn kernel(&self, a: &BlAlgebra) -> ElementSet {
        ElementSet::from_elements(a.size(), a.elements().filter(|&x| self.values[x].is_one()))
    }
}

impl fmt::Display for RationalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Every definition evaluated on one map, with the first failing point of
/// each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVerdict {
    pub bosbach: bool,
    pub bosbach_witness: Option<Vec<ElementId>>,
    pub riecan: bool,
    pub riecan_witness: Option<Vec<ElementId>>,
    pub state_morphism: bool,
    pub state_morphism_witness: Option<Vec<ElementId>>,
    /// `m(x ∨ y) = max(m(x), m(y))`
    pub join_max: bool,
    /// `m(x ⊙ y) = max(m(x) + m(y) - 1, 0)`
    pub prod_lukasiewicz: bool,
    /// `{x : m(x) = 1}` is a maximal filter.
    pub kernel_maximal: bool,
    /// Not a proper convex combination of two distinct states, decided by
    /// the rank of the constraints tight at this point.
    pub vertex: bool,
    /// A state satisfying all the extremality criteria above.
    pub extremal: bool,
    pub checks: Vec<Check>,
}

fn in_unit(v: &Q) -> bool {
    !v.is_negative() && *v <= Q::one()
}

fn range_defect(a: &BlAlgebra, s: &[Q]) -> Option<Vec<ElementId>> {
    a.elements().find(|&x| !in_unit(&s[x])).map(|x| vec![x])
}

fn bosbach_defect(a: &BlAlgebra, s: &[Q]) -> Option<Vec<ElementId>> {
    range_defect(a, s)
        .or_else(|| (!s[a.bottom()].is_zero()).then(|| vec![a.bottom()]))
        .or_else(|| (!s[a.top()].is_one()).then(|| vec![a.top()]))
        .or_else(|| {
            a.elements()
                .flat_map(|x| a.elements().map(move |y| (x, y)))
                .find(|&(x, y)| &s[x] + &s[a.imp(x, y)] != &s[y] + &s[a.imp(y, x)])
                .map(|(x, y)| vec![x, y])
        })
}

fn riecan_defect(a: &BlAlgebra, s: &[Q]) -> Option<Vec<ElementId>> {
    range_defect(a, s).or_else(|| (!s[a.top()].is_one()).then(|| vec![a.top()])).or_else(|| {
        a.elements()
            .flat_map(|x| a.elements().map(move |y| (x, y)))
            .find(|&(x, y)| a.partial_sum(x, y).is_some_and(|sum| s[sum] != &s[x] + &s[y]))
            .map(|(x, y)| vec![x, y])
    })
}

fn state_morphism_defect(a: &BlAlgebra, s: &[Q]) -> Option<Vec<ElementId>> {
    range_defect(a, s).or_else(|| (!s[a.bottom()].is_zero()).then(|| vec![a.bottom()])).or_else(|| {
        a.elements()
            .flat_map(|x| a.elements().map(move |y| (x, y)))
            .find(|&(x, y)| {
                let rhs = (Q::one() - &s[x] + &s[y]).min(Q::one());
                s[a.imp(x, y)] != rhs
            })
            .map(|(x, y)| vec![x, y])
    })
}

fn pairs_hold(a: &BlAlgebra, mut ok: impl FnMut(ElementId, ElementId) -> bool) -> bool {
    a.elements().all(|x| a.elements().all(|y| ok(x, y)))
}

/// Rank test: the point is a vertex of the state polytope iff the
/// equations together with the bounds tight at it have full rank.
fn is_vertex(a: &BlAlgebra, s: &[Q]) -> bool {
    let n = a.size();
    let mut eqs = bosbach_equations(a);
    for x in a.elements() {
        if s[x].is_zero() || s[x].is_one() {
            eqs.push(Equation::fix(n, x, s[x].clone()));
        }
    }
    rank(n, &eqs) == n
}

pub fn check_state(a: &BlAlgebra, s: &RationalState) -> StateVerdict {
    check_values(a, s.values(), &maximal_filters(a))
}

/// [`check_state`] with the maximal filters supplied, for bulk scans.
pub fn check_values(a: &BlAlgebra, s: &[Q], maximal: &[Filter]) -> StateVerdict {
    let bosbach_witness = bosbach_defect(a, s);
    let riecan_witness = riecan_defect(a, s);
    let state_morphism_witness = state_morphism_defect(a, s);
    let bosbach = bosbach_witness.is_none();
    let riecan = riecan_witness.is_none();
    let state_morphism = state_morphism_witness.is_none();
    let mut checks = vec![Check::from_bool("states.bosbach-riecan", bosbach == riecan, || {
        format!("bosbach: {bosbach} (witness {bosbach_witness:?}), riecan: {riecan} (witness {riecan_witness:?})")
    })];

    let (join_max, prod_lukasiewicz, kernel_maximal, vertex) = if bosbach {
        let zero = Q::zero();
        let join_max = pairs_hold(a, |x, y| s[a.join(x, y)] == s[x].clone().max(s[y].clone()));
        let prod_luk = pairs_hold(a, |x, y| s[a.prod(x, y)] == (&s[x] + &s[y] - Q::one()).max(zero.clone()));
        let kernel = ElementSet::from_elements(a.size(), a.elements().filter(|&x| s[x].is_one()));
        let kernel_maximal = maximal.iter().any(|f| f.members() == &kernel);
        (join_max, prod_luk, kernel_maximal, is_vertex(a, s))
    } else {
        (false, false, false, false)
    };
    let extremal = bosbach && vertex && state_morphism && join_max && prod_lukasiewicz && kernel_maximal;
    if bosbach {
        let all = [vertex, state_morphism, join_max, prod_lukasiewicz, kernel_maximal];
        checks.push(Check::from_bool("states.extremal-criteria", all.iter().all(|&b| b == vertex), || {
            format!(
                "vertex: {vertex}, state-morphism: {state_morphism}, join-max: {join_max}, \
                 prod: {prod_lukasiewicz}, kernel maximal: {kernel_maximal}"
            )
        }));
    } else {
        checks.push(Check::inapplicable("states.extremal-criteria", "map is not a state"));
    }
    StateVerdict {
        bosbach,
        bosbach_witness,
        riecan,
        riecan_witness,
        state_morphism,
        state_morphism_witness,
        join_max,
        prod_lukasiewicz,
        kernel_maximal,
        vertex,
        extremal,
        checks,
    }
}

/// Every map from the carrier into `values`, checked for Bosbach/Riečan
/// agreement. Returns the number of maps scanned, the number of states
/// among them and the first disagreeing map.
pub fn exhaustive_bosbach_riecan(a: &BlAlgebra, values: &[Q]) -> (usize, usize, Option<Vec<Q>>) {
    let n = a.size();
    let k = values.len();
    let total = k.checked_pow(n as u32).expect("scan too large");
    let mut states = 0;
    let mut s = vec![Q::zero(); n];
    for code in 0..total {
        let mut c = code;
        for x in (0..n).rev() {
            s[x] = values[c % k].clone();
            c /= k;
        }
        let b = bosbach_defect(a, &s).is_none();
        let r = riecan_defect(a, &s).is_none();
        if b != r {
            return (code + 1, states, Some(s));
        }
        states += usize::from(b);
    }
    (total, states, None)
}

/// The rationals in `[0, 1]` with denominator at most `d`, ascending.
pub fn farey(d: i64) -> Vec<Q> {
    let mut v: Vec<Q> = (1..=d).flat_map(|q| (0..=q).map(move |p| rational(p, q))).collect();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{direct_product, four_element, mv_chain};

    #[test]
    fn rational_round_trip() {
        for s in ["0", "1", "1/2", "3/4", "-2/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn four_element_state() {
        let (a, _) = four_element();
        let s = RationalState::parse(&a, &["0", "1/2", "1", "1"]).unwrap();
        let v = check_state(&a, &s);
        assert!(v.bosbach && v.riecan && v.extremal, "{v:?}");
        let bad = RationalState::parse(&a, &["0", "1/3", "1", "1"]).unwrap();
        let v = check_state(&a, &bad);
        assert!(!v.bosbach && !v.riecan);
        let w = v.bosbach_witness.unwrap();
        let vals = bad.values();
        assert_ne!(&vals[w[0]] + &vals[a.imp(w[0], w[1])], &vals[w[1]] + &vals[a.imp(w[1], w[0])]);
    }

    #[test]
    fn boolean_state() {
        let a = mv_chain(1);
        let s = RationalState::parse(&a, &["0", "1"]).unwrap();
        assert!(check_state(&a, &s).extremal);
    }

    #[test]
    fn midpoint_is_not_extremal() {
        let b = mv_chain(1);
        let a = direct_product(&b, &b);
        let s = RationalState::parse(&a, &["0", "1/2", "1/2", "1"]).unwrap();
        let v = check_state(&a, &s);
        assert!(v.bosbach && !v.extremal && !v.vertex && !v.state_morphism);
        assert!(v.checks.iter().all(|c| !c.is_failure()));
    }

    #[test]
    fn exhaustive_agreement_on_three_chain() {
        let a = mv_chain(2);
        let (scanned, states, bad) = exhaustive_bosbach_riecan(&a, &farey(4));
        assert_eq!(bad, None);
        assert_eq!(scanned, 7usize.pow(3));
        assert_eq!(states, 1);
    }
}
