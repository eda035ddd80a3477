use std::cell::Cell;

use rayon::prelude::*;
use serde::Serialize;

use super::verify::OperatorAxiom;
use super::{verify_operator, StateOperator};
use crate::algebra::{BlAlgebra, ElementId};

/// Operator classes the enumerator can search for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchClass {
    State,
    Strong,
    Morphism,
    /// State-operators that also preserve `→` (idempotent endomorphisms).
    Endomorphism,
}

impl SearchClass {
    pub fn parse(s: &str) -> Option<SearchClass> {
        match s {
            "state" => Some(SearchClass::State),
            "strong" => Some(SearchClass::Strong),
            "morphism" => Some(SearchClass::Morphism),
            "endomorphism" => Some(SearchClass::Endomorphism),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SearchClass::State => "state",
            SearchClass::Strong => "strong",
            SearchClass::Morphism => "morphism",
            SearchClass::Endomorphism => "endomorphism",
        }
    }

    fn axioms(self) -> &'static [OperatorAxiom] {
        const ENDO: [OperatorAxiom; 6] = [
            OperatorAxiom::FixesBottom,
            OperatorAxiom::ImplMeet,
            OperatorAxiom::ProdResidual,
            OperatorAxiom::ImageProd,
            OperatorAxiom::ImageImpl,
            OperatorAxiom::ImplMorphism,
        ];
        match self {
            SearchClass::State => &OperatorAxiom::STATE,
            SearchClass::Strong => &OperatorAxiom::STRONG,
            SearchClass::Morphism => &OperatorAxiom::MORPHISM,
            SearchClass::Endomorphism => &ENDO,
        }
    }

    pub fn contains(self, op: &StateOperator) -> bool {
        match self {
            SearchClass::State => op.is_state(),
            SearchClass::Strong => op.is_strong(),
            SearchClass::Morphism => op.is_morphism(),
            SearchClass::Endomorphism => op.is_state() && op.preserves_impl(),
        }
    }
}

/// All operators of `class`, in lexicographic order of their maps.
pub fn enumerate_operators(a: &BlAlgebra, class: SearchClass) -> Vec<StateOperator> {
    enumerate_operators_with(a, class, false)
}

/// As [`enumerate_operators`]; with `parallel`, the first branching level is
/// split across worker threads. The output order does not depend on it.
pub fn enumerate_operators_with(a: &BlAlgebra, class: SearchClass, parallel: bool) -> Vec<StateOperator> {
    let n = a.size();
    let mut start = vec![None; n];
    start[a.bottom()] = Some(a.bottom());
    start[a.top()] = Some(a.top());
    let free: Vec<ElementId> = a.elements().filter(|&x| start[x].is_none()).collect();
    let Some(&first) = free.first() else {
        return finish(a, class, vec![start.into_iter().map(Option::unwrap).collect()]);
    };
    let search = Search { a, class, negs: a.elements().map(|x| a.neg(x)).collect() };
    let branch = |v: ElementId| {
        let mut partial = start.clone();
        partial[first] = Some(v);
        let mut found = Vec::new();
        if search.consistent(&partial, first) {
            search.extend(&mut partial, &free, 1, &mut found);
        }
        found
    };
    let maps: Vec<Vec<ElementId>> = if parallel {
        (0..n).into_par_iter().map(branch).collect::<Vec<_>>().concat()
    } else {
        (0..n).map(branch).collect::<Vec<_>>().concat()
    };
    finish(a, class, maps)
}

fn finish(a: &BlAlgebra, class: SearchClass, maps: Vec<Vec<ElementId>>) -> Vec<StateOperator> {
    maps.into_iter()
        .map(|m| verify_operator(a, m).expect("enumerated maps are well-formed"))
        .filter(|op| class.contains(op))
        .collect()
}

struct Search<'a> {
    a: &'a BlAlgebra,
    class: SearchClass,
    negs: Vec<ElementId>,
}

impl Search<'_> {
    fn extend(
        &self,
        partial: &mut Vec<Option<ElementId>>,
        free: &[ElementId],
        depth: usize,
        out: &mut Vec<Vec<ElementId>>,
    ) {
        let Some(&x) = free.get(depth) else {
            out.push(partial.iter().map(|v| v.expect("all assigned")).collect());
            return;
        };
        for v in self.a.elements() {
            partial[x] = Some(v);
            if self.consistent(partial, x) {
                self.extend(partial, free, depth + 1, out);
            }
        }
        partial[x] = None;
    }

    /// Checks every constraint that became decidable when `k` was assigned.
    fn consistent(&self, s: &[Option<ElementId>], k: ElementId) -> bool {
        let a = self.a;
        let v = s[k].expect("k just assigned");
        // Monotone.
        for y in a.elements() {
            if let Some(w) = s[y] {
                if (a.leq(k, y) && !a.leq(v, w)) || (a.leq(y, k) && !a.leq(w, v)) {
                    return false;
                }
            }
        }
        // Commutes with negation.
        let nk = self.negs[k];
        if let Some(w) = s[nk] {
            if w != self.negs[v] {
                return false;
            }
        }
        for y in a.elements() {
            if self.negs[y] == k {
                if let Some(w) = s[y] {
                    if v != self.negs[w] {
                        return false;
                    }
                }
            }
        }
        // Image consists of fixed points.
        if let Some(w) = s[v] {
            if w != v {
                return false;
            }
        }
        if s.contains(&Some(k)) && v != k {
            return false;
        }
        // Defining identities at every point that now evaluates fully and
        // reads s(k).
        let touched = Cell::new(false);
        let eval = |x: ElementId| {
            if x == k {
                touched.set(true);
            }
            s[x]
        };
        let n = a.size();
        for &axiom in self.class.axioms() {
            if axiom.arity() == 0 {
                continue;
            }
            for x in 0..n {
                for y in 0..n {
                    touched.set(false);
                    if axiom.eval(a, &eval, x, y) == Some(false) && touched.get() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Every map `A → A` of `class`, by checking all `n^n` maps without any
/// pruning. Only usable on small carriers.
pub fn brute_force_operators(a: &BlAlgebra, class: SearchClass) -> Vec<Vec<ElementId>> {
    let n = a.size();
    let total = n.checked_pow(n as u32).expect("carrier too large for brute force");
    let mut out = Vec::new();
    let mut map = vec![0; n];
    for code in 0..total {
        let mut c = code;
        for i in (0..n).rev() {
            map[i] = c % n;
            c /= n;
        }
        let s = |x: ElementId| Some(map[x]);
        let ok = class.axioms().iter().all(|&axiom| {
            if axiom.arity() == 0 {
                return axiom.eval(a, &s, 0, 0) == Some(true);
            }
            (0..n).all(|x| (0..n).all(|y| axiom.eval(a, &s, x, y) == Some(true)))
        });
        if ok {
            out.push(map.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{direct_product, four_element, godel_chain, mv_chain};

    fn maps(ops: &[StateOperator]) -> Vec<Vec<ElementId>> {
        ops.iter().map(|o| o.map().to_vec()).collect()
    }

    #[test]
    fn mv_chains_have_only_the_identity() {
        for n in 1..=4 {
            let a = mv_chain(n);
            let ops = enumerate_operators(&a, SearchClass::State);
            assert_eq!(maps(&ops), vec![a.elements().collect::<Vec<_>>()]);
            assert_eq!(brute_force_operators(&a, SearchClass::State), maps(&ops));
        }
    }

    #[test]
    fn godel_three_chain_has_two() {
        let g = godel_chain(3);
        let ops = enumerate_operators(&g, SearchClass::State);
        assert_eq!(maps(&ops), vec![vec![0, 1, 2], vec![0, 2, 2]]);
        assert_eq!(brute_force_operators(&g, SearchClass::State), maps(&ops));
    }

    #[test]
    fn pruned_matches_brute_force_on_small_algebras() {
        let b = mv_chain(1);
        let algebras = [four_element().0, direct_product(&b, &b), godel_chain(4), direct_product(&b, &mv_chain(2))];
        for a in &algebras {
            for class in [SearchClass::State, SearchClass::Strong, SearchClass::Morphism, SearchClass::Endomorphism] {
                let pruned = maps(&enumerate_operators(a, class));
                assert_eq!(pruned, brute_force_operators(a, class), "{:?} on {:?}", class, a.labels());
            }
        }
    }

    #[test]
    fn parallel_order_matches_serial() {
        let b = mv_chain(1);
        let a = direct_product(&b, &direct_product(&b, &b));
        let serial = maps(&enumerate_operators_with(&a, SearchClass::State, false));
        let parallel = maps(&enumerate_operators_with(&a, SearchClass::State, true));
        assert_eq!(serial, parallel);
        assert!(serial.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn class_names_round_trip() {
        for c in [SearchClass::State, SearchClass::Strong, SearchClass::Morphism, SearchClass::Endomorphism] {
            assert_eq!(SearchClass::parse(c.as_str()), Some(c));
        }
        assert_eq!(SearchClass::parse("nope"), None);
    }
}
