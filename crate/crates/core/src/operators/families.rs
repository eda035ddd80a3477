//! Stock operator families: the coordinate operators `σ_J` and the
//! idempotent operators `σ_a` on `S_n ⊕ (S_{n1} × ... × S_{nk})`, and the
//! threshold operators on finite Gödel chains.

use super::{enumerate_operators, SearchClass, StateOperator};
use crate::algebra::{AlgebraError, BlAlgebra, ElementId};
use crate::constructors::{direct_product, mv_chain, ordinal_sum};
use crate::report::Check;

/// Parameters of `S_lower ⊕ (S_{f1} × ... × S_{fk})`. `lower = 0` means the
/// product alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SummandShape {
    lower: usize,
    factors: Vec<usize>,
}

impl SummandShape {
    pub fn new(lower: usize, factors: Vec<usize>) -> Result<SummandShape, AlgebraError> {
        if factors.is_empty() || factors.contains(&0) {
            return Err(AlgebraError::ShapeMismatch("the upper summand needs at least one nontrivial factor".into()));
        }
        Ok(SummandShape { lower, factors })
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn product_size(&self) -> usize {
        self.factors.iter().map(|f| f + 1).product()
    }

    pub fn size(&self) -> usize {
        self.lower + self.product_size()
    }

    /// The product with labels `(i,j,...)`, coordinates as integers.
    pub fn upper_summand(&self) -> BlAlgebra {
        let product =
            self.factors[1..].iter().fold(mv_chain(self.factors[0]), |acc, &f| direct_product(&acc, &mv_chain(f)));
        let mut tables = product.into_tables();
        tables.labels = (0..self.product_size())
            .map(|c| {
                let coords: Vec<String> = self.decode(c).iter().map(usize::to_string).collect();
                format!("({})", coords.join(","))
            })
            .collect();
        BlAlgebra::new(tables).expect("relabelled product is valid")
    }

    pub fn build(&self) -> BlAlgebra {
        let upper = self.upper_summand();
        if self.lower == 0 {
            upper
        } else {
            ordinal_sum(&[mv_chain(self.lower), upper]).expect("MV-chains are linear")
        }
    }

    fn decode(&self, mut code: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            out[i] = code % (f + 1);
            code /= f + 1;
        }
        out
    }

    /// Element of the upper summand with the given coordinates.
    pub fn index(&self, coords: &[usize]) -> ElementId {
        assert_eq!(coords.len(), self.factors.len(), "coordinate count");
        let code = coords.iter().zip(&self.factors).fold(0, |acc, (&c, &f)| {
            assert!(c <= f, "coordinate out of range");
            acc * (f + 1) + c
        });
        self.lower + code
    }

    /// Coordinates of an upper-summand element; `None` on the lower chain.
    pub fn coords(&self, x: ElementId) -> Option<Vec<usize>> {
        (x >= self.lower && x < self.size()).then(|| self.decode(x - self.lower))
    }

    /// Least element `0_1` of the upper summand.
    pub fn upper_bottom(&self) -> ElementId {
        self.lower
    }

    pub fn in_upper(&self, x: ElementId) -> bool {
        x >= self.lower
    }

    /// `a_J`: top coordinate on `J`, zero elsewhere.
    pub fn corner(&self, j: u64) -> ElementId {
        let coords: Vec<usize> =
            self.factors.iter().enumerate().map(|(i, &f)| if j >> i & 1 == 1 { f } else { 0 }).collect();
        self.index(&coords)
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.factors.len()) - 1
    }
}

/// Finds parameters whose construction is isomorphic to `a`, returning the
/// isomorphism from the constructed algebra to `a`.
pub fn summand_shape(a: &BlAlgebra) -> Option<(SummandShape, Vec<ElementId>)> {
    fn factorizations(target: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if target == 1 {
            if !prefix.is_empty() {
                out.push(prefix.clone());
            }
            return;
        }
        for m in min..=target {
            if target % m == 0 {
                prefix.push(m - 1);
                factorizations(target / m, m, prefix, out);
                prefix.pop();
            }
        }
    }
    let n = a.size();
    for lower in 0..n {
        let mut lists = Vec::new();
        factorizations(n - lower, 2, &mut Vec::new(), &mut lists);
        for factors in lists {
            let shape = SummandShape::new(lower, factors).expect("factors are positive");
            if let Some(iso) = shape.build().isomorphism_to(a) {
                return Some((shape, iso));
            }
        }
    }
    None
}

fn check_shape(shape: &SummandShape, a: &BlAlgebra) {
    assert_eq!(a.size(), shape.size(), "algebra was not built from this shape");
}

/// `σ_J`: identity on the lower chain; on the upper summand, coordinates in
/// `j` (a bit mask) are raised to their top, the others kept.
pub fn subset_operator(shape: &SummandShape, a: &BlAlgebra, j: u64) -> StateOperator {
    check_shape(shape, a);
    let map = a
        .elements()
        .map(|x| match shape.coords(x) {
            None => x,
            Some(c) => {
                let raised: Vec<usize> = c
                    .iter()
                    .zip(shape.factors())
                    .enumerate()
                    .map(|(i, (&ci, &f))| if j >> i & 1 == 1 { f } else { ci })
                    .collect();
                shape.index(&raised)
            }
        })
        .collect();
    StateOperator::new(a, map).expect("well-formed map")
}

/// Idempotent elements of `a`, ascending.
pub fn idempotents(a: &BlAlgebra) -> Vec<ElementId> {
    a.elements().filter(|&x| a.is_idempotent(x)).collect()
}

/// `σ_a` for an idempotent `e` of the upper summand: `1` on `[e, 1]`, `0_1`
/// on `[0_1, e*]` with `e* = e → 0_1`, identity elsewhere. The result is
/// verified, so a bad choice of `e` yields a rejected operator.
pub fn idempotent_operator(shape: &SummandShape, a: &BlAlgebra, e: ElementId) -> Result<StateOperator, AlgebraError> {
    check_shape(shape, a);
    if !shape.in_upper(e) || !a.is_idempotent(e) {
        return Err(AlgebraError::ShapeMismatch(format!("{} is not an idempotent of the upper summand", a.label(e))));
    }
    let bottom1 = shape.upper_bottom();
    let e_star = a.imp(e, bottom1);
    let map = a
        .elements()
        .map(|x| {
            if !shape.in_upper(x) {
                x
            } else if a.leq(e, x) {
                a.top()
            } else if a.leq(x, e_star) {
                bottom1
            } else {
                x
            }
        })
        .collect();
    StateOperator::new(a, map)
}

/// `[e, 1] ∪ [0_1, e*]` is the whole upper summand.
pub fn covers_upper(shape: &SummandShape, a: &BlAlgebra, e: ElementId) -> bool {
    let e_star = a.imp(e, shape.upper_bottom());
    a.elements().filter(|&x| shape.in_upper(x)).all(|x| a.leq(e, x) || a.leq(x, e_star))
}

/// First upper-summand element outside `[e, 1] ∪ [0_1, e*]`.
pub fn coverage_gap(shape: &SummandShape, a: &BlAlgebra, e: ElementId) -> Option<ElementId> {
    let e_star = a.imp(e, shape.upper_bottom());
    a.elements().filter(|&x| shape.in_upper(x)).find(|&x| !a.leq(e, x) && !a.leq(x, e_star))
}

/// Largest carrier on which the family checks also enumerate every
/// state-operator.
pub const FAMILY_ENUMERATION_LIMIT: usize = 12;

const SUMMAND_CLAIMS: [&str; 5] = [
    "summand.subset-operators",
    "summand.idempotent-operator",
    "summand.idempotent-extremes",
    "summand.fixes-chain",
    "summand.operator-count",
];

/// Structure facts for the shape: every state-operator fixes the lower
/// chain, the `2^k` coordinate operators are distinct endomorphisms with
/// the expected kernels, and the covering idempotent operators are
/// endomorphisms.
pub fn summand_checks(shape: &SummandShape, a: &BlAlgebra) -> Vec<Check> {
    check_shape(shape, a);
    if shape.lower() == 0 {
        return SUMMAND_CLAIMS.iter().map(|c| Check::inapplicable(c, "no lower chain")).collect();
    }
    let mut checks = Vec::new();
    let full = shape.full_mask();

    let subset_ops: Vec<StateOperator> = (0..=full).map(|j| subset_operator(shape, a, j)).collect();
    let mut bad = None;
    for (j, op) in subset_ops.iter().enumerate() {
        let j = j as u64;
        let kernel_expected: Vec<ElementId> = a.elements().filter(|&x| a.leq(shape.corner(full & !j), x)).collect();
        let kernel: Vec<ElementId> = a.elements().filter(|&x| op.apply(x) == a.top()).collect();
        if !op.is_morphism() || !op.preserves_impl() || kernel != kernel_expected {
            bad = Some(j);
            break;
        }
    }
    let distinct = {
        let mut maps: Vec<&[ElementId]> = subset_ops.iter().map(|o| o.map()).collect();
        maps.sort();
        maps.dedup();
        maps.len() == subset_ops.len()
    };
    checks.push(Check::from_bool("summand.subset-operators", bad.is_none() && distinct, || match bad {
        Some(j) => format!("coordinate operator for mask {j:#b} is not an endomorphism with kernel [a_Jc, 1]"),
        None => "coordinate operators are not pairwise distinct".into(),
    }));

    let upper_idempotents: Vec<ElementId> = idempotents(a).into_iter().filter(|&e| shape.in_upper(e)).collect();
    let mut idem_bad = None;
    for &e in &upper_idempotents {
        if covers_upper(shape, a, e) {
            let op = idempotent_operator(shape, a, e).expect("upper idempotent");
            if !op.is_morphism() || !op.preserves_impl() {
                idem_bad = Some(e);
                break;
            }
        }
    }
    checks.push(Check::from_witness("summand.idempotent-operator", idem_bad.map(|e| vec![e]), |_| {
        "covering idempotent whose operator is not an endomorphism".into()
    }));

    let at_bottom = idempotent_operator(shape, a, shape.upper_bottom()).expect("0_1 is idempotent");
    let at_top = idempotent_operator(shape, a, a.top()).expect("1 is idempotent");
    checks.push(Check::from_bool(
        "summand.idempotent-extremes",
        at_bottom.map() == subset_ops[full as usize].map() && at_top.map() == subset_ops[0].map(),
        || "σ at 0_1 should raise every coordinate, σ at 1 should be the identity".into(),
    ));

    if a.size() <= FAMILY_ENUMERATION_LIMIT {
        let all = enumerate_operators(a, SearchClass::State);
        let defect = all.iter().find_map(|op| {
            a.elements()
                .find(|&x| {
                    let s = op.apply(x);
                    (!shape.in_upper(x) && s != x) || (shape.in_upper(x) && !shape.in_upper(s))
                })
                .map(|x| vec![x])
        });
        checks.push(Check::from_witness("summand.fixes-chain", defect, |_| {
            "state-operator moves a lower-chain element or leaves the upper summand".into()
        }));
        let count = all.len();
        let expected = subset_ops.len();
        checks.push(if count >= expected {
            Check {
                note: format!("{count} state-operators, at least {expected}"),
                ..Check::pass("summand.operator-count")
            }
        } else {
            Check::fail("summand.operator-count", Vec::new(), format!("{count} state-operators, fewer than {expected}"))
        });
    } else {
        checks.push(Check::inapplicable("summand.fixes-chain", "carrier too large to enumerate"));
        checks.push(Check::inapplicable("summand.operator-count", "carrier too large to enumerate"));
    }
    checks
}

/// Which non-covering idempotents give a rejected operator; covering fails
/// without rejection at least at `e = 1`.
pub fn coverage_report(shape: &SummandShape, a: &BlAlgebra) -> Vec<(ElementId, bool, Option<ElementId>)> {
    idempotents(a)
        .into_iter()
        .filter(|&e| shape.in_upper(e))
        .map(|e| {
            let op = idempotent_operator(shape, a, e).expect("upper idempotent");
            (e, op.is_state(), coverage_gap(shape, a, e))
        })
        .collect()
}

fn require_godel_chain(a: &BlAlgebra) -> Result<(), AlgebraError> {
    let v = a.classify_variety();
    if v.is_godel.holds && v.is_linear.holds {
        Ok(())
    } else {
        Err(AlgebraError::ShapeMismatch("not a Gödel chain".into()))
    }
}

/// `x ↦ x` for `x <= t`, `1` otherwise.
pub fn godel_threshold(a: &BlAlgebra, t: ElementId) -> Result<StateOperator, AlgebraError> {
    require_godel_chain(a)?;
    StateOperator::new(a, a.elements().map(|x| if a.leq(x, t) { x } else { a.top() }).collect())
}

/// `x ↦ x` for `x < t`, `1` otherwise.
pub fn godel_lower_threshold(a: &BlAlgebra, t: ElementId) -> Result<StateOperator, AlgebraError> {
    require_godel_chain(a)?;
    StateOperator::new(a, a.elements().map(|x| if a.lt(x, t) { x } else { a.top() }).collect())
}

/// All distinct threshold operators that fix `0`, in lexicographic map order.
pub fn godel_threshold_family(a: &BlAlgebra) -> Result<Vec<StateOperator>, AlgebraError> {
    require_godel_chain(a)?;
    let mut ops = Vec::new();
    for t in a.elements() {
        ops.push(godel_threshold(a, t)?);
        if t != a.bottom() {
            ops.push(godel_lower_threshold(a, t)?);
        }
    }
    ops.sort_by(|x, y| x.map().cmp(y.map()));
    ops.dedup_by(|x, y| x.map() == y.map());
    Ok(ops)
}

/// On a finite Gödel chain the state-operators are exactly the threshold
/// operators, and each is an endomorphism.
pub fn godel_checks(a: &BlAlgebra) -> Vec<Check> {
    let Ok(family) = godel_threshold_family(a) else {
        return vec![Check::inapplicable("godel.threshold-operators", "not a Gödel chain")];
    };
    let enumerated = enumerate_operators(a, SearchClass::State);
    let same = family.iter().map(|o| o.map()).eq(enumerated.iter().map(|o| o.map()));
    let endo = family.iter().all(|o| o.is_morphism() && o.preserves_impl());
    vec![Check::from_bool("godel.threshold-operators", same && endo, || {
        format!("{} threshold operators, {} enumerated, all endomorphisms: {endo}", family.len(), enumerated.len())
    })]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::godel_chain;
    use crate::operators::OperatorAxiom;

    #[test]
    fn shape_layout() {
        let shape = SummandShape::new(1, vec![1, 1]).unwrap();
        let a = shape.build();
        assert_eq!(a.size(), 5);
        assert_eq!(a.labels(), ["s0.0", "s1.(0,0)", "s1.(0,1)", "s1.(1,0)", "1"]);
        assert_eq!(shape.index(&[1, 1]), a.top());
        assert_eq!(shape.coords(0), None);
        assert_eq!(shape.coords(3), Some(vec![1, 0]));
    }

    #[test]
    fn coordinate_operators_on_small_sum() {
        let shape = SummandShape::new(1, vec![1, 1]).unwrap();
        let a = shape.build();
        let maps: Vec<Vec<usize>> = (0..4).map(|j| subset_operator(&shape, &a, j).map().to_vec()).collect();
        assert_eq!(maps, vec![vec![0, 1, 2, 3, 4], vec![0, 3, 4, 3, 4], vec![0, 2, 2, 4, 4], vec![0, 4, 4, 4, 4]]);
        for c in summand_checks(&shape, &a) {
            assert!(!c.is_failure(), "{c:?}");
        }
    }

    #[test]
    fn uncovered_idempotent_is_rejected() {
        let shape = SummandShape::new(0, vec![4, 4]).unwrap();
        let a = shape.build();
        let e = shape.index(&[0, 4]);
        assert!(!covers_upper(&shape, &a, e));
        assert_eq!(a.label(a.imp(e, shape.upper_bottom())), "(4,0)");
        let op = idempotent_operator(&shape, &a, e).unwrap();
        assert!(!op.is_state());
        let x = shape.index(&[3, 1]);
        assert_eq!(a.label(a.prod(x, x)), "(2,0)");
        assert_eq!(a.label(op.apply(a.prod(x, x))), "(0,0)");
        assert!(op.verdict().violation(OperatorAxiom::ProdMorphism).is_some());
    }

    #[test]
    fn detection_recovers_shape() {
        let shape = SummandShape::new(1, vec![1, 2]).unwrap();
        let (found, iso) = summand_shape(&shape.build()).unwrap();
        assert_eq!(found, shape);
        assert_eq!(iso.len(), shape.size());
    }

    #[test]
    fn godel_three_family() {
        let g = godel_chain(3);
        let fam: Vec<Vec<usize>> = godel_threshold_family(&g).unwrap().iter().map(|o| o.map().to_vec()).collect();
        assert_eq!(fam, vec![vec![0, 1, 2], vec![0, 2, 2]]);
        for n in 2..=6 {
            let g = godel_chain(n);
            assert_eq!(godel_threshold_family(&g).unwrap().len(), n - 1);
            assert!(!godel_checks(&g)[0].is_failure());
        }
        assert!(godel_threshold(&mv_chain(2), 0).is_err());
    }
}
