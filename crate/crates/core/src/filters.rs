//! Filters, maximal filters, the radical and the classification predicates
//! (simple, semisimple, local, perfect, locally finite, primary).

use crate::algebra::{AlgebraError, BlAlgebra, ElementId};
use crate::constructors::quotient_by_filter;
use crate::operators::StateOperator;
use crate::report::Check;
use crate::set::ElementSet;

/// Largest carrier for which filters are found by scanning every subset.
pub const SUBSET_SCAN_LIMIT: usize = 16;

/// A nonempty, upward closed, ⊙-closed subset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filter {
    members: ElementSet,
}

impl Filter {
    pub fn new(a: &BlAlgebra, members: ElementSet) -> Result<Filter, AlgebraError> {
        if is_filter(a, &members) {
            Ok(Filter { members })
        } else {
            Err(AlgebraError::NotAFilter)
        }
    }

    pub fn from_elements(a: &BlAlgebra, elements: impl IntoIterator<Item = ElementId>) -> Result<Filter, AlgebraError> {
        Filter::new(a, ElementSet::from_elements(a.size(), elements))
    }

    pub fn top_only(a: &BlAlgebra) -> Filter {
        Filter { members: ElementSet::from_elements(a.size(), [a.top()]) }
    }

    pub fn whole(a: &BlAlgebra) -> Filter {
        Filter { members: ElementSet::full(a.size()) }
    }

    pub(crate) fn unchecked(members: ElementSet) -> Filter {
        Filter { members }
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_proper(&self, a: &BlAlgebra) -> bool {
        !self.contains(a.bottom())
    }

    /// `{1}`
    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn to_vec(&self) -> Vec<ElementId> {
        self.members.to_vec()
    }

    pub fn labels(&self, a: &BlAlgebra) -> Vec<String> {
        self.members.labels(a)
    }

    /// Closed under `σ` (a state-filter).
    pub fn is_sigma_closed(&self, sigma: &StateOperator) -> bool {
        self.members.iter().all(|x| self.contains(sigma.apply(x)))
    }
}

pub fn is_filter(a: &BlAlgebra, s: &ElementSet) -> bool {
    if s.capacity() != a.size() || s.is_empty() {
        return false;
    }
    for x in s.iter() {
        for y in a.elements() {
            if a.leq(x, y) && !s.contains(y) {
                return false;
            }
        }
        for y in s.iter() {
            if !s.contains(a.prod(x, y)) {
                return false;
            }
        }
    }
    true
}

pub fn up_closure(a: &BlAlgebra, s: &ElementSet) -> ElementSet {
    ElementSet::from_elements(a.size(), a.elements().filter(|&y| s.iter().any(|x| a.leq(x, y))))
}

/// Every filter, ordered by size then by member list.
pub fn all_filters(a: &BlAlgebra) -> Vec<Filter> {
    if a.size() <= SUBSET_SCAN_LIMIT {
        all_filters_by_subsets(a)
    } else {
        all_filters_by_idempotents(a)
    }
}

/// Scans all subsets containing the top element.
///
/// # Panics
/// If the carrier exceeds [`SUBSET_SCAN_LIMIT`].
pub fn all_filters_by_subsets(a: &BlAlgebra) -> Vec<Filter> {
    let n = a.size();
    assert!(n <= SUBSET_SCAN_LIMIT, "subset scan limited to {SUBSET_SCAN_LIMIT} elements");
    let top_bit = 1u64 << a.top();
    let mut out: Vec<Filter> = (1u64..1 << n)
        .filter(|m| m & top_bit != 0)
        .map(|m| ElementSet::from_mask(n, m))
        .filter(|s| is_filter(a, s))
        .map(Filter::unchecked)
        .collect();
    out.sort();
    out
}

/// In a finite BL-algebra every filter is the principal up-set `[e, 1]` of
/// an idempotent `e`.
pub fn all_filters_by_idempotents(a: &BlAlgebra) -> Vec<Filter> {
    let mut out: Vec<Filter> = a
        .elements()
        .filter(|&e| a.is_idempotent(e))
        .map(|e| Filter::unchecked(ElementSet::from_elements(a.size(), a.elements().filter(|&y| a.leq(e, y)))))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The least filter containing `xs`: the up-set of all finite products.
pub fn filter_generated(a: &BlAlgebra, xs: &[ElementId]) -> Filter {
    let mut s = ElementSet::from_elements(a.size(), xs.iter().copied().chain([a.top()]));
    product_closure(a, &mut s);
    Filter::unchecked(up_closure(a, &s))
}

/// Adds products of members until stable.
pub(crate) fn product_closure(a: &BlAlgebra, s: &mut ElementSet) {
    loop {
        let members = s.to_vec();
        let mut grew = false;
        for &x in &members {
            for &y in &members {
                grew |= s.insert(a.prod(x, y));
            }
        }
        if !grew {
            return;
        }
    }
}

/// The proper members of `filters` not strictly below another proper member.
pub fn maximal_among(a: &BlAlgebra, filters: &[Filter]) -> Vec<Filter> {
    let proper: Vec<&Filter> = filters.iter().filter(|f| f.is_proper(a)).collect();
    proper
        .iter()
        .filter(|f| !proper.iter().any(|g| g.len() > f.len() && f.is_subset(g)))
        .map(|f| (*f).clone())
        .collect()
}

pub fn maximal_filters(a: &BlAlgebra) -> Vec<Filter> {
    maximal_among(a, &all_filters(a))
}

/// The limit of the increasing sequence `(x^k)⁻`.
pub(crate) fn neg_power_limit(a: &BlAlgebra, x: ElementId) -> ElementId {
    a.neg(*a.powers(x).last().expect("powers is nonempty"))
}

/// Maximality test for a proper filter: every `x ∉ F` has `(x^k)⁻ ∈ F`
/// for some `k`.
pub fn is_maximal_by_criterion(a: &BlAlgebra, f: &Filter) -> bool {
    f.is_proper(a)
        && a.elements().filter(|&x| !f.contains(x)).all(|x| a.powers(x).into_iter().any(|p| f.contains(a.neg(p))))
}

/// Intersection of all maximal filters (the whole carrier when there are none).
pub fn radical_by_intersection(a: &BlAlgebra) -> ElementSet {
    maximal_filters(a).iter().fold(ElementSet::full(a.size()), |acc, f| acc.intersection(f.members()))
}

/// The co-infinitesimal elements: `(x^k)⁻ <= x` for all `k`.
pub fn radical_by_formula(a: &BlAlgebra) -> ElementSet {
    ElementSet::from_elements(a.size(), a.elements().filter(|&x| a.is_co_infinitesimal(x)))
}

/// The radical. Both computations are run and must agree.
pub fn radical(a: &BlAlgebra) -> Filter {
    let by_meet = radical_by_intersection(a);
    let by_formula = radical_by_formula(a);
    assert_eq!(by_meet, by_formula, "radical: intersection and co-infinitesimal formula disagree");
    Filter::unchecked(by_meet)
}

/// `(a ⊙ b)⁻ ∈ P` implies `(a^k)⁻ ∈ P` or `(b^k)⁻ ∈ P` for some `k`.
pub fn is_primary(a: &BlAlgebra, p: &Filter) -> bool {
    primary_defect(a, p).is_none()
}

fn primary_defect(a: &BlAlgebra, p: &Filter) -> Option<(ElementId, ElementId)> {
    if !p.is_proper(a) {
        return Some((a.bottom(), a.bottom()));
    }
    for x in a.elements() {
        for y in a.elements() {
            if p.contains(a.neg(a.prod(x, y)))
                && !p.contains(neg_power_limit(a, x))
                && !p.contains(neg_power_limit(a, y))
            {
                return Some((x, y));
            }
        }
    }
    None
}

/// Local by the order criterion: every `x` has `ord(x) < ∞` or `ord(x⁻) < ∞`.
pub fn local_by_order(a: &BlAlgebra) -> Result<(), ElementId> {
    match a.elements().find(|&x| !a.ord(x).is_finite() && !a.ord(a.neg(x)).is_finite()) {
        Some(x) => Err(x),
        None => Ok(()),
    }
}

/// Every `x ≠ 1` has finite order.
pub fn locally_finite(a: &BlAlgebra) -> Result<(), ElementId> {
    match a.elements().find(|&x| x != a.top() && !a.ord(x).is_finite()) {
        Some(x) => Err(x),
        None => Ok(()),
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraClassification {
    /// Exactly two filters.
    pub simple: bool,
    pub semisimple: bool,
    pub local: bool,
    pub perfect: bool,
    pub locally_finite: bool,
    pub linear: bool,
    pub filters: Vec<Filter>,
    pub radical: Filter,
    /// `{x⁻ : x ∈ Rad}`
    pub radical_neg: ElementSet,
    pub maximal_filters: Vec<Filter>,
    pub primary_filters: Vec<Filter>,
    /// An element in neither the radical nor its negation.
    pub perfect_witness: Option<ElementId>,
    /// An element with `ord(x) = ord(x⁻) = ∞`.
    pub local_witness: Option<ElementId>,
    /// An element `≠ 1` of infinite order.
    pub locally_finite_witness: Option<ElementId>,
    pub checks: Vec<Check>,
}

pub fn classify_algebra(a: &BlAlgebra) -> AlgebraClassification {
    let filters = all_filters(a);
    let maximal = maximal_among(a, &filters);
    let by_meet = maximal.iter().fold(ElementSet::full(a.size()), |acc, f| acc.intersection(f.members()));
    let by_formula = radical_by_formula(a);
    let mut checks = Vec::new();

    checks.push(Check::from_bool("rad.intersection-formula", by_meet == by_formula, || {
        format!("intersection {:?} vs co-infinitesimals {:?}", by_meet, by_formula)
    }));
    let rad = Filter::unchecked(by_meet);
    let rad_neg = rad.members().map(|x| a.neg(x));

    let crit = filters.iter().filter(|f| f.is_proper(a)).find(|f| maximal.contains(f) != is_maximal_by_criterion(a, f));
    checks.push(Check::from_witness("filter.maximal-criterion", crit.map(|f| f.to_vec()), |_| {
        "containment-maximality and the negated-power criterion disagree".into()
    }));

    let simple = filters.len() == 2;
    let lf = locally_finite(a);
    let by_order = local_by_order(a);
    let local = maximal.len() == 1;
    let nontrivial = !a.is_trivial();

    if nontrivial {
        checks.push(Check::from_bool("local.ord-criterion", local == by_order.is_ok(), || {
            format!("unique maximal filter: {local}, order criterion: {}", by_order.is_ok())
        }));
        checks.push(Check::from_bool(
            "simple.locally-finite",
            simple == lf.is_ok() && (!simple || a.is_linear()),
            || format!("simple: {simple}, locally finite: {}, linear: {}", lf.is_ok(), a.is_linear()),
        ));
    } else {
        checks.push(Check::inapplicable("local.ord-criterion", "one-element algebra"));
        checks.push(Check::inapplicable("simple.locally-finite", "one-element algebra"));
    }

    let proper: Vec<&Filter> = filters.iter().filter(|f| f.is_proper(a)).collect();
    let primary: Vec<Filter> = proper.iter().filter(|p| is_primary(a, p)).map(|p| (*p).clone()).collect();
    let all_primary = primary.len() == proper.len();
    if nontrivial {
        checks.push(Check::from_bool("local.primary", local == all_primary, || {
            format!("local: {local}, every proper filter primary: {all_primary}")
        }));
    } else {
        checks.push(Check::inapplicable("local.primary", "one-element algebra"));
    }

    let mut quotient_defect = None;
    for p in &proper {
        let q = quotient_by_filter(a, p).expect("filters from the scan are filters");
        let q_local = maximal_filters(&q.algebra).len() == 1;
        if q_local != is_primary(a, p) {
            quotient_defect = Some(p.to_vec());
            break;
        }
    }
    checks.push(Check::from_witness("primary.quotient-local", quotient_defect, |_| {
        "primary filter whose quotient is not local, or conversely".into()
    }));

    let neg_closure = a.elements().find(|&x| {
        (rad.contains(x) && !rad_neg.contains(a.neg(x))) || (rad_neg.contains(x) && !rad.contains(a.neg(x)))
    });
    checks.push(Check::from_witness("rad.negation-closure", neg_closure.map(|x| vec![x]), |_| {
        "negation does not swap the radical and its negation".into()
    }));

    let perfect_witness = a.elements().find(|&x| !rad.contains(x) && !rad_neg.contains(x));
    let perfect = perfect_witness.is_none();
    if perfect {
        let bad = rad
            .members()
            .iter()
            .flat_map(|x| rad_neg.iter().map(move |y| (x, y)))
            .find(|&(x, y)| !a.leq(a.neg(x), a.neg(y)));
        checks.push(Check::from_witness("perfect.negation-order", bad.map(|(x, y)| vec![x, y]), |_| {
            "x in Rad, y in Rad⁻ but x⁻ is not below y⁻".into()
        }));
    } else {
        checks.push(Check::inapplicable("perfect.negation-order", "algebra is not perfect"));
    }

    let semisimple = rad.is_trivial();
    checks.push(Check::from_bool("simple.semisimple", !simple || semisimple, || {
        "simple algebra with nontrivial radical".into()
    }));

    AlgebraClassification {
        simple,
        semisimple,
        local,
        perfect,
        locally_finite: lf.is_ok(),
        linear: a.is_linear(),
        filters,
        radical: rad,
        radical_neg: rad_neg,
        maximal_filters: maximal,
        primary_filters: primary,
        perfect_witness,
        local_witness: by_order.err(),
        locally_finite_witness: lf.err(),
        checks,
    }
}

/// Whether the nontrivial (state-)filters have a least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub least: Option<Filter>,
    /// Two minimal nontrivial filters, when irreducibility fails that way.
    pub incomparable_minimal: Option<(Filter, Filter)>,
}

/// Subdirect irreducibility via the filter lattice: with `sigma`, only
/// σ-closed filters (state-filters) count.
pub fn subdirectly_irreducible(a: &BlAlgebra, sigma: Option<&StateOperator>) -> Irreducibility {
    let nontrivial: Vec<Filter> = all_filters(a)
        .into_iter()
        .filter(|f| !f.is_trivial())
        .filter(|f| sigma.is_none_or(|s| f.is_sigma_closed(s)))
        .collect();
    let least = nontrivial.iter().find(|f| nontrivial.iter().all(|g| f.is_subset(g))).cloned();
    let incomparable_minimal = if least.is_none() {
        let minimal: Vec<&Filter> =
            nontrivial.iter().filter(|f| !nontrivial.iter().any(|g| g.len() < f.len() && g.is_subset(f))).collect();
        (minimal.len() >= 2).then(|| (minimal[0].clone(), minimal[1].clone()))
    } else {
        None
    };
    Irreducibility { irreducible: least.is_some(), least, incomparable_minimal }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{direct_product, four_element, mv_chain, ordinal_sum, trivial_algebra};

    fn set(a: &BlAlgebra, labels: &[&str]) -> Vec<ElementId> {
        let mut v: Vec<ElementId> = labels.iter().map(|l| a.index_of(l).unwrap()).collect();
        v.sort();
        v
    }

    /// Oracle: brute-force filter predicate written directly from the definition.
    fn naive_is_filter(a: &BlAlgebra, mask: u32) -> bool {
        let has = |x: usize| mask >> x & 1 == 1;
        mask != 0
            && a.elements()
                .all(|x| !has(x) || a.elements().all(|y| (!a.leq(x, y) || has(y)) && (!has(y) || has(a.prod(x, y)))))
    }

    #[test]
    fn boolean_filters() {
        let a = mv_chain(1);
        let fs = all_filters(&a);
        assert_eq!(fs.iter().map(|f| f.to_vec()).collect::<Vec<_>>(), vec![vec![1], vec![0, 1]]);
    }

    #[test]
    fn four_element_filters_match_subset_oracle() {
        let (a, _) = four_element();
        let expected: Vec<Vec<ElementId>> = (0u32..16)
            .filter(|&m| naive_is_filter(&a, m))
            .map(|m| (0..4).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        let got: Vec<Vec<ElementId>> = all_filters(&a).iter().map(|f| f.to_vec()).collect();
        assert_eq!(got.len(), expected.len());
        for e in &expected {
            assert!(got.contains(e));
        }
        assert_eq!(got, vec![set(&a, &["1"]), set(&a, &["b", "1"]), set(&a, &["0", "a", "b", "1"])]);
    }

    #[test]
    fn chains_have_two_filters() {
        for n in 1..=6 {
            assert_eq!(all_filters(&mv_chain(n)).len(), 2);
        }
    }

    #[test]
    fn generated_filters() {
        let (a, _) = four_element();
        assert_eq!(filter_generated(&a, &[a.top()]).to_vec(), vec![a.top()]);
        assert_eq!(filter_generated(&a, &set(&a, &["b"])).to_vec(), set(&a, &["b", "1"]));
        assert_eq!(filter_generated(&a, &set(&a, &["a"])).len(), 4);
    }

    #[test]
    fn maximal_and_radical() {
        let (a, _) = four_element();
        let m = maximal_filters(&a);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].to_vec(), set(&a, &["b", "1"]));
        assert_eq!(radical(&a).to_vec(), set(&a, &["b", "1"]));
        assert_eq!(radical_by_formula(&a).to_vec(), set(&a, &["b", "1"]));

        let b = direct_product(&mv_chain(1), &mv_chain(1));
        assert_eq!(maximal_filters(&b).len(), 2);
        assert_eq!(radical(&b).to_vec(), vec![b.top()]);
        assert!(radical(&mv_chain(4)).is_trivial());
    }

    #[test]
    fn classification_of_four_element() {
        let (a, _) = four_element();
        let c = classify_algebra(&a);
        assert!(c.local && !c.perfect && !c.simple);
        assert_eq!(c.perfect_witness, a.index_of("a"));
        assert!(c.checks.iter().all(|k| !k.is_failure()), "{:?}", c.checks);
    }

    #[test]
    fn classification_of_chains() {
        for n in 1..=5 {
            let c = classify_algebra(&mv_chain(n));
            assert!(c.simple && c.semisimple && c.locally_finite && c.local);
        }
        let three = ordinal_sum(&[mv_chain(1), mv_chain(1)]).unwrap();
        let c = classify_algebra(&three);
        assert!(c.perfect);
        assert_eq!(c.radical.len(), 2);
        assert_eq!(c.radical_neg.to_vec(), vec![three.bottom()]);
    }

    #[test]
    fn trivial_algebra_is_not_simple() {
        let t = trivial_algebra();
        let c = classify_algebra(&t);
        assert!(!c.simple);
        assert_eq!(c.filters.len(), 1);
        assert!(c.checks.iter().all(|k| !k.is_failure()));
    }

    #[test]
    fn subset_scan_and_idempotent_route_agree() {
        let algebras = vec![
            four_element().0,
            direct_product(&mv_chain(2), &mv_chain(1)),
            direct_product(&mv_chain(1), &direct_product(&mv_chain(1), &mv_chain(1))),
            ordinal_sum(&[mv_chain(2), direct_product(&mv_chain(1), &mv_chain(1))]).unwrap(),
            crate::constructors::godel_chain(5),
        ];
        for a in algebras {
            assert!(a.size() <= 12);
            assert_eq!(all_filters_by_subsets(&a), all_filters_by_idempotents(&a));
        }
    }

    #[test]
    fn plain_square_is_not_irreducible() {
        let b = mv_chain(2);
        let a = direct_product(&b, &b);
        let r = subdirectly_irreducible(&a, None);
        assert!(!r.irreducible);
        assert!(r.incomparable_minimal.is_some());
        let s = subdirectly_irreducible(&b, None);
        assert!(s.irreducible);
        assert_eq!(s.least.unwrap().len(), b.size());
    }

    #[test]
    fn not_a_filter_rejected() {
        let (a, _) = four_element();
        assert!(Filter::from_elements(&a, set(&a, &["a", "1"])).is_err());
    }
}
