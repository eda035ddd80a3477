//! Stock algebras and operators: MV-chains, Gödel chains, direct products,
//! ordinal sums, quotients by filters and the diagonal operators on squares.
//!
//! Every constructor goes through [`BlAlgebra::new`], so its output is checked
//! like any user-supplied table.

use crate::algebra::{chain_lattice, AlgebraError, BlAlgebra, ElementId, Table, Tables};
use crate::filters::{is_filter, Filter};
use crate::operators::StateOperator;
use crate::set::ElementSet;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Label of `i/n` in lowest terms.
fn fraction_label(i: usize, n: usize) -> String {
    match i {
        0 => "0".into(),
        _ if i == n => "1".into(),
        _ => {
            let g = gcd(i, n);
            format!("{}/{}", i / g, n / g)
        }
    }
}

/// The MV-chain `S_n = {0, 1/n, ..., 1}` with Łukasiewicz operations.
///
/// # Panics
/// If `n == 0`.
pub fn mv_chain(n: usize) -> BlAlgebra {
    assert!(n >= 1, "mv_chain needs n >= 1");
    let size = n + 1;
    let (meet, join) = chain_lattice(size);
    let prod = Table::from_fn(size, |i, j| (i + j).saturating_sub(n));
    let imp = Table::from_fn(size, |i, j| (n - i + j).min(n));
    let labels = (0..size).map(|i| fraction_label(i, n)).collect();
    BlAlgebra::new(Tables { labels, meet, join, prod, imp }).expect("MV-chain tables are valid")
}

/// The Gödel chain with `n` elements: `x ⊙ y = min(x, y)`.
///
/// # Panics
/// If `n < 2`.
pub fn godel_chain(n: usize) -> BlAlgebra {
    assert!(n >= 2, "godel_chain needs at least two elements");
    let (meet, join) = chain_lattice(n);
    let prod = Table::from_fn(n, |i, j| i.min(j));
    let imp = Table::from_fn(n, |i, j| if i <= j { n - 1 } else { j });
    let labels = (0..n)
        .map(|i| match i {
            0 => "0".to_owned(),
            _ if i == n - 1 => "1".to_owned(),
            _ => format!("c{i}"),
        })
        .collect();
    BlAlgebra::new(Tables { labels, meet, join, prod, imp }).expect("Gödel chain tables are valid")
}

/// The one-element algebra `0 = 1`.
pub fn trivial_algebra() -> BlAlgebra {
    let t = Table::from_fn(1, |_, _| 0);
    BlAlgebra::new(Tables { labels: vec!["1".into()], meet: t.clone(), join: t.clone(), prod: t.clone(), imp: t })
        .expect("one-element tables are valid")
}

/// `A × B` with componentwise operations. Element `(i, j)` has index `i·|B| + j`.
pub fn direct_product(a: &BlAlgebra, b: &BlAlgebra) -> BlAlgebra {
    let m = b.size();
    let n = a.size() * m;
    let lift = |f: &dyn Fn(&BlAlgebra, ElementId, ElementId) -> ElementId,
                g: &dyn Fn(&BlAlgebra, ElementId, ElementId) -> ElementId| {
        Table::from_fn(n, |x, y| f(a, x / m, y / m) * m + g(b, x % m, y % m))
    };
    let tables = Tables {
        labels: (0..n).map(|x| format!("({},{})", a.label(x / m), b.label(x % m))).collect(),
        meet: lift(&|t, x, y| t.meet(x, y), &|t, x, y| t.meet(x, y)),
        join: lift(&|t, x, y| t.join(x, y), &|t, x, y| t.join(x, y)),
        prod: lift(&|t, x, y| t.prod(x, y), &|t, x, y| t.prod(x, y)),
        imp: lift(&|t, x, y| t.imp(x, y), &|t, x, y| t.imp(x, y)),
    };
    BlAlgebra::new(tables).expect("products of BL-algebras are BL-algebras")
}

/// Index of the product element `(i, j)` in `A × B`.
pub fn pair_index(b: &BlAlgebra, i: ElementId, j: ElementId) -> ElementId {
    i * b.size() + j
}

/// The ordinal sum `A_1 ⊕ ... ⊕ A_k` with all tops identified.
///
/// Element order: the first summand bottom-up, then the non-top elements of
/// each later summand in their own index order, the common top last.
/// Labels are `s{k}.{label}`, except the top, which is `1`.
pub fn ordinal_sum(summands: &[BlAlgebra]) -> Result<BlAlgebra, AlgebraError> {
    let (first, rest) =
        summands.split_first().ok_or_else(|| AlgebraError::Malformed("ordinal sum of no summands".into()))?;
    if rest.is_empty() {
        return Ok(first.clone());
    }
    for (k, s) in summands[..summands.len() - 1].iter().enumerate() {
        if !s.is_linear() {
            return Err(AlgebraError::NonLinearSummand(k));
        }
    }
    let order = first.chain_order();
    let labels: Vec<String> = order.iter().map(|&x| prefixed(0, first, x)).collect();
    let mut acc = relabel_in_order(first, &order, labels)?;
    for (k, upper) in rest.iter().enumerate() {
        acc = stack(&acc, upper, k + 1)?;
    }
    Ok(acc)
}

fn prefixed(k: usize, a: &BlAlgebra, x: ElementId) -> String {
    if x == a.top() {
        "1".into()
    } else {
        format!("s{k}.{}", a.label(x))
    }
}

/// The same algebra with elements listed in `order`.
fn relabel_in_order(a: &BlAlgebra, order: &[ElementId], labels: Vec<String>) -> Result<BlAlgebra, AlgebraError> {
    let n = a.size();
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let pull =
        |f: fn(&BlAlgebra, ElementId, ElementId) -> ElementId| Table::from_fn(n, |i, j| pos[f(a, order[i], order[j])]);
    BlAlgebra::new(Tables {
        labels,
        meet: pull(BlAlgebra::meet),
        join: pull(BlAlgebra::join),
        prod: pull(BlAlgebra::prod),
        imp: pull(BlAlgebra::imp),
    })
}

/// Binary ordinal sum with `lower` a chain whose index order is its order.
fn stack(lower: &BlAlgebra, upper: &BlAlgebra, k: usize) -> Result<BlAlgebra, AlgebraError> {
    let p = lower.size() - 1;
    let n = p + upper.size();
    let global_top = n - 1;
    let upper_rest: Vec<ElementId> = upper.elements().filter(|&u| u != upper.top()).collect();
    let mut upper_pos = vec![0; upper.size()];
    for (i, &u) in upper_rest.iter().enumerate() {
        upper_pos[u] = p + i;
    }
    upper_pos[upper.top()] = global_top;
    let lower_pos = |x: ElementId| if x == lower.top() { global_top } else { x };
    debug_assert_eq!(lower.top(), p);
    let mut origin: Vec<Option<ElementId>> = vec![None; n];
    let mut upper_of = vec![upper.top(); n];
    for (x, o) in origin.iter_mut().enumerate().take(p) {
        *o = Some(x);
    }
    for &u in &upper_rest {
        upper_of[upper_pos[u]] = u;
    }
    let op = |lf: fn(&BlAlgebra, ElementId, ElementId) -> ElementId,
              mixed_low_high: fn(ElementId, ElementId) -> ElementId,
              mixed_high_low: fn(ElementId, ElementId) -> ElementId| {
        Table::from_fn(n, |x, y| match (origin[x], origin[y]) {
            (Some(i), Some(j)) => lower_pos(lf(lower, i, j)),
            (None, None) => upper_pos[lf(upper, upper_of[x], upper_of[y])],
            (Some(_), None) => mixed_low_high(x, y),
            (None, Some(_)) => mixed_high_low(x, y),
        })
    };
    let mut labels: Vec<String> = (0..p).map(|x| lower.label(x).to_owned()).collect();
    labels.extend(upper_rest.iter().map(|&u| prefixed(k, upper, u)));
    labels.push("1".into());
    let tables = Tables {
        labels,
        meet: op(BlAlgebra::meet, |x, _| x, |_, y| y),
        join: op(BlAlgebra::join, |_, y| y, |x, _| x),
        prod: op(BlAlgebra::prod, |x, _| x, |_, y| y),
        imp: Table::from_fn(n, |x, y| match (origin[x], origin[y]) {
            (Some(i), Some(j)) => lower_pos(lower.imp(i, j)),
            (None, None) => upper_pos[upper.imp(upper_of[x], upper_of[y])],
            (Some(_), None) => global_top,
            (None, Some(_)) => y,
        }),
    };
    BlAlgebra::new(tables)
}

/// The four-element chain `0 < a < b < 1` that is BL but not MV, with its
/// endomorphism `σ = (0, a, 1, 1)`.
pub fn four_element() -> (BlAlgebra, StateOperator) {
    let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
    let (meet, join) = chain_lattice(4);
    let prod = Table::from_rows(&[vec![0, 0, 0, 0], vec![0, 0, 1, 1], vec![0, 1, 2, 2], vec![0, 1, 2, 3]])
        .expect("square table");
    let imp = Table::from_rows(&[vec![3, 3, 3, 3], vec![1, 3, 3, 3], vec![0, 1, 3, 3], vec![0, 1, 2, 3]])
        .expect("square table");
    let a = BlAlgebra::new(Tables { labels, meet, join, prod, imp }).expect("four-element tables are valid");
    let sigma = StateOperator::new(&a, vec![0, 1, 3, 3]).expect("well-formed map");
    (a, sigma)
}

/// A quotient algebra with the canonical projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: BlAlgebra,
    /// `projection[x]` is the class of `x`.
    pub projection: Vec<ElementId>,
    /// `representatives[c]` is the largest element of class `c`.
    pub representatives: Vec<ElementId>,
}

/// `A/F` for `x ~ y` iff `d(x, y) ∈ F`. Classes are represented by their
/// largest element and listed in ascending representative index.
pub fn quotient_by_filter(a: &BlAlgebra, f: &Filter) -> Result<Quotient, AlgebraError> {
    let n = a.size();
    let related = |x: ElementId, y: ElementId| f.contains(a.dist(x, y));
    let rep_of: Vec<ElementId> =
        (0..n).map(|x| (0..n).filter(|&y| related(x, y)).fold(x, |m, y| a.join(m, y))).collect();
    let mut representatives: Vec<ElementId> = rep_of.clone();
    representatives.sort_unstable();
    representatives.dedup();
    let class_of = |r: ElementId| representatives.binary_search(&r).expect("representative listed");
    let projection: Vec<ElementId> = rep_of.iter().map(|&r| class_of(r)).collect();
    let m = representatives.len();
    let induced = |op: fn(&BlAlgebra, ElementId, ElementId) -> ElementId| {
        Table::from_fn(m, |c, d| projection[op(a, representatives[c], representatives[d])])
    };
    let algebra = BlAlgebra::new(Tables {
        labels: representatives.iter().map(|&r| a.label(r).to_owned()).collect(),
        meet: induced(BlAlgebra::meet),
        join: induced(BlAlgebra::join),
        prod: induced(BlAlgebra::prod),
        imp: induced(BlAlgebra::imp),
    })?;
    if let Some(msg) = a.homomorphism_defect(&algebra, &projection) {
        return Err(AlgebraError::NotAHomomorphism(format!("projection: {msg}")));
    }
    Ok(Quotient { algebra, projection, representatives })
}

/// [`quotient_by_filter`] for an arbitrary subset, rejecting non-filters.
pub fn quotient_by_subset(a: &BlAlgebra, s: &ElementSet) -> Result<Quotient, AlgebraError> {
    if !is_filter(a, s) {
        return Err(AlgebraError::NotAFilter);
    }
    quotient_by_filter(a, &Filter::new(a, s.clone())?)
}

/// Which coordinate a diagonal operator copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coordinate {
    First,
    Second,
}

/// `A × A` with `σ(x, y) = (x, x)` or `(y, y)`.
pub fn diagonal_operator(a: &BlAlgebra, which: Coordinate) -> (BlAlgebra, StateOperator) {
    let sq = direct_product(a, a);
    let m = a.size();
    let map = sq
        .elements()
        .map(|p| {
            let c = match which {
                Coordinate::First => p / m,
                Coordinate::Second => p % m,
            };
            c * m + c
        })
        .collect();
    let sigma = StateOperator::new(&sq, map).expect("well-formed map");
    (sq, sigma)
}

/// A verified BL-homomorphism.
#[derive(Clone, Debug)]
pub struct Homomorphism<'a> {
    source: &'a BlAlgebra,
    target: &'a BlAlgebra,
    map: Vec<ElementId>,
}

impl<'a> Homomorphism<'a> {
    pub fn new(source: &'a BlAlgebra, target: &'a BlAlgebra, map: Vec<ElementId>) -> Result<Self, AlgebraError> {
        match source.homomorphism_defect(target, &map) {
            Some(msg) => Err(AlgebraError::NotAHomomorphism(msg)),
            None => Ok(Homomorphism { source, target, map }),
        }
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x]
    }

    pub fn source(&self) -> &BlAlgebra {
        self.source
    }

    pub fn target(&self) -> &BlAlgebra {
        self.target
    }
}

/// `B × C` with `σ(b, c) = (b, h(b))`.
pub fn sigma_h(h: &Homomorphism<'_>) -> (BlAlgebra, StateOperator) {
    let prod = direct_product(h.source, h.target);
    let m = h.target.size();
    let map = prod.elements().map(|p| (p / m) * m + h.apply(p / m)).collect();
    let sigma = StateOperator::new(&prod, map).expect("well-formed map");
    (prod, sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::OperatorClass;

    fn id(a: &BlAlgebra, l: &str) -> ElementId {
        a.index_of(l).unwrap_or_else(|| panic!("no element {l}"))
    }

    #[test]
    fn mv_chain_formulas() {
        let s4 = mv_chain(4);
        assert_eq!(s4.labels(), ["0", "1/4", "1/2", "3/4", "1"]);
        assert_eq!(s4.prod(2, 3), 1);
        assert_eq!(s4.imp(3, 1), 2);
        assert!(s4.is_mv());
        assert_eq!(mv_chain(1).size(), 2);
    }

    #[test]
    fn godel_chain_basics() {
        let g = godel_chain(3);
        let c = id(&g, "c1");
        assert_eq!(g.prod(c, c), c);
        assert_eq!(g.imp(c, 0), 0);
        assert!(g.classify_variety().is_godel.holds);
        assert!(godel_chain(2).is_isomorphic(&mv_chain(1)));
    }

    #[test]
    fn product_basics() {
        let b = mv_chain(1);
        let p = direct_product(&b, &b);
        assert_eq!(p.size(), 4);
        assert_eq!(p.meet(id(&p, "(0,1)"), id(&p, "(1,0)")), id(&p, "(0,0)"));
        assert!(!p.is_linear());

        let s4 = mv_chain(4);
        let q = direct_product(&s4, &s4);
        let x = pair_index(&s4, 3, 1);
        assert_eq!(q.prod(x, x), pair_index(&s4, 2, 0));
    }

    #[test]
    fn ordinal_sum_of_two_booleans_is_three_chain() {
        let b = mv_chain(1);
        let t = ordinal_sum(&[b.clone(), b.clone()]).unwrap();
        assert_eq!(t.labels(), ["s0.0", "s1.0", "1"]);
        assert!(t.is_linear());
        assert_eq!(t.prod(1, 1), 1);
        assert_eq!(t.imp(0, 1), 2);
        assert_eq!(t.imp(1, 0), 0);
        assert!(t.is_isomorphic(&godel_chain(3)));
    }

    #[test]
    fn ordinal_sum_case_table() {
        let s2 = mv_chain(2);
        let b = mv_chain(1);
        let top = direct_product(&b, &b);
        let a = ordinal_sum(&[s2.clone(), top.clone()]).unwrap();
        assert_eq!(a.size(), 6);
        for x in 0..2 {
            for y in 2..6 {
                assert_eq!(a.prod(x, y), x);
                assert_eq!(a.imp(x, y), a.top());
                assert_eq!(a.prod(y, x), x);
                assert_eq!(a.imp(y, x), x);
            }
        }
    }

    #[test]
    fn ordinal_sum_rejects_non_linear_lower_summand() {
        let b = mv_chain(1);
        let sq = direct_product(&b, &b);
        assert_eq!(ordinal_sum(&[sq.clone(), b.clone()]), Err(AlgebraError::NonLinearSummand(0)));
        assert!(ordinal_sum(&[godel_chain(2), sq]).is_ok());
    }

    #[test]
    fn ordinal_sum_associative_on_chains() {
        let (x, y, z) = (mv_chain(2), godel_chain(3), mv_chain(1));
        let flat = ordinal_sum(&[x.clone(), y.clone(), z.clone()]).unwrap();
        let right = ordinal_sum(&[x.clone(), ordinal_sum(&[y.clone(), z.clone()]).unwrap()]).unwrap();
        let left = ordinal_sum(&[ordinal_sum(&[x, y]).unwrap(), z]).unwrap();
        assert_eq!(flat.tables().prod, right.tables().prod);
        assert_eq!(flat.tables().imp, left.tables().imp);
        assert!(flat.is_isomorphic(&right) && flat.is_isomorphic(&left));
    }

    #[test]
    fn four_element_tables() {
        let (a, s) = four_element();
        let (ea, eb) = (id(&a, "a"), id(&a, "b"));
        assert_eq!(s.apply(eb), a.top());
        assert_eq!(a.prod(eb, ea), ea);
        assert_eq!(s.class(), OperatorClass::Morphism);
        assert_eq!(s.image_set().to_vec(), vec![0, 1, 3]);
    }

    #[test]
    fn quotients() {
        let (a, _) = four_element();
        let q = quotient_by_filter(&a, &Filter::top_only(&a)).unwrap();
        assert_eq!(q.algebra, a);
        let whole = quotient_by_filter(&a, &Filter::whole(&a)).unwrap();
        assert!(whole.algebra.is_trivial());
        let f = Filter::from_elements(&a, [2, 3]).unwrap();
        let q = quotient_by_filter(&a, &f).unwrap();
        assert_eq!(q.projection, vec![0, 1, 2, 2]);
        assert!(q.algebra.is_isomorphic(&mv_chain(2)));
        let bad = ElementSet::from_elements(4, [1, 3]);
        assert_eq!(quotient_by_subset(&a, &bad).unwrap_err(), AlgebraError::NotAFilter);
    }

    #[test]
    fn diagonal_operators() {
        let b = mv_chain(2);
        let (sq, s1) = diagonal_operator(&b, Coordinate::First);
        let (_, s2) = diagonal_operator(&b, Coordinate::Second);
        assert_eq!(s1.apply(pair_index(&b, 1, 2)), pair_index(&b, 1, 1));
        assert_eq!(s2.apply(pair_index(&b, 1, 2)), pair_index(&b, 2, 2));
        for s in [&s1, &s2] {
            assert_eq!(s.class(), OperatorClass::Morphism);
            assert!(s.preserves_impl());
        }
        for i in 0..3 {
            assert_eq!(s1.apply(pair_index(&b, i, i)), pair_index(&b, i, i));
        }
        let swap: Vec<ElementId> = sq.elements().map(|p| pair_index(&b, p % 3, p / 3)).collect();
        assert!(sq.homomorphism_defect(&sq, &swap).is_none());
        for p in sq.elements() {
            assert_eq!(swap[s1.apply(p)], s2.apply(swap[p]));
        }
    }

    #[test]
    fn sigma_h_of_identity_is_first_diagonal() {
        let b = mv_chain(2);
        let h = Homomorphism::new(&b, &b, vec![0, 1, 2]).unwrap();
        let (_, s) = sigma_h(&h);
        let (_, s1) = diagonal_operator(&b, Coordinate::First);
        assert_eq!(s.map(), s1.map());
        assert!(Homomorphism::new(&b, &b, vec![0, 2, 2]).is_err());
    }
}
