use proptest::prelude::*;

use blstate::builtin::build_str;
use blstate::constructors::{mv_chain, ordinal_sum};
use blstate::document::{parse_algebra, serialize_algebra, AlgebraDocument};
use blstate::filters::{
    all_filters, is_maximal_by_criterion, maximal_filters, radical_by_formula, radical_by_intersection,
};
use blstate::operators::{
    arrow_checks, brute_force_operators, consequence_checks, enumerate_operators, linear_checks, strong_checks,
    SearchClass, StateOperator,
};
use blstate::report::{Check, Verdict};
use blstate::states::{check_state, extremal_states, hull_coefficients, mix, pull_back_state, rational, RationalState};
use blstate::BlAlgebra;

fn chain_spec() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..=4).prop_map(|n| format!("mv-chain({n})")),
        (2usize..=4).prop_map(|n| format!("godel-chain({n})")),
    ]
}

/// Specifiers of algebras with at most nine elements.
fn algebra_spec() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => chain_spec(),
        1 => (1usize..=2, 1usize..=2).prop_map(|(m, n)| format!("product(mv-chain({m}),mv-chain({n}))")),
        1 => (2usize..=3).prop_map(|n| format!("product(godel-chain({n}),mv-chain(1))")),
        2 => (chain_spec(), chain_spec()).prop_map(|(f, g)| format!("ordinal-sum({f},{g})")),
        1 => (1usize..=2, 1usize..=2).prop_map(|(l, n)| format!("shape({l},1,{n})")),
        1 => Just("four-element".to_string()),
    ]
    .prop_filter("at most nine elements", |s| build_str(s).map(|i| i.algebra.size() <= 9).unwrap_or(false))
}

fn algebra() -> impl Strategy<Value = BlAlgebra> {
    algebra_spec().prop_map(|s| build_str(&s).expect("valid specifier").algebra)
}

fn no_failure(checks: &[Check]) -> Result<(), TestCaseError> {
    match checks.iter().find(|c| c.verdict == Verdict::Fail) {
        Some(c) => Err(TestCaseError::fail(format!("{} fails at {:?}: {}", c.claim, c.witness, c.note))),
        None => Ok(()),
    }
}

/// Integer weights turned into a probability vector.
fn normalise(raw: &[u8]) -> Vec<blstate::states::linear::Q> {
    let total: i64 = raw.iter().map(|&w| i64::from(w) + 1).sum();
    raw.iter().map(|&w| rational(i64::from(w) + 1, total)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn document_round_trip(a in algebra()) {
        let text = serialize_algebra(&AlgebraDocument::from_algebra(&a));
        let doc = parse_algebra(&text).unwrap();
        prop_assert_eq!(serialize_algebra(&doc), text.clone());
        let b = doc.load().unwrap().algebra;
        prop_assert_eq!(b.tables(), a.tables());
    }

    #[test]
    fn prod_only_document_derives_the_same_tables(a in algebra()) {
        prop_assume!(a.is_linear());
        let mut doc = AlgebraDocument::from_algebra(&a);
        let order = a.chain_order();
        prop_assume!(order.iter().enumerate().all(|(i, &x)| i == x));
        doc.tables.meet = None;
        doc.tables.join = None;
        doc.tables.imp = None;
        let b = doc.build_algebra().unwrap();
        prop_assert_eq!(b.tables(), a.tables());
    }

    #[test]
    fn residuation_and_derived_laws(a in algebra()) {
        for x in a.elements() {
            for y in a.elements() {
                prop_assert_eq!(a.neg(a.prod(x, y)), a.imp(x, a.neg(y)));
                prop_assert_eq!(a.imp(x, a.meet(x, y)), a.imp(x, y));
                prop_assert_eq!(a.leq(x, a.neg(y)), a.prod(x, y) == a.bottom());
                if a.orthogonal(x, y) {
                    prop_assert_eq!(a.imp(a.neg(y), a.neg(a.neg(x))), a.imp(a.neg(x), a.neg(a.neg(y))));
                }
                for z in a.elements() {
                    prop_assert_eq!(a.leq(a.prod(x, y), z), a.leq(x, a.imp(y, z)));
                    prop_assert_eq!(a.imp(x, a.imp(y, z)), a.imp(a.prod(x, y), z));
                    prop_assert!(a.leq(a.imp(x, y), a.imp(a.prod(x, z), a.prod(y, z))));
                }
            }
        }
    }

    #[test]
    fn radical_definitions_agree(a in algebra()) {
        prop_assert_eq!(radical_by_intersection(&a), radical_by_formula(&a));
        let maximal = maximal_filters(&a);
        for f in all_filters(&a).iter().filter(|f| f.is_proper(&a)) {
            prop_assert_eq!(is_maximal_by_criterion(&a, f), maximal.contains(f));
        }
    }

    #[test]
    fn ordinal_sum_is_associative(f in chain_spec(), g in chain_spec(), h in chain_spec()) {
        let [f, g, h] = [f, g, h].map(|s| build_str(&s).unwrap().algebra);
        let left = ordinal_sum(&[ordinal_sum(&[f.clone(), g.clone()]).unwrap(), h.clone()]).unwrap();
        let right = ordinal_sum(&[f, ordinal_sum(&[g, h]).unwrap()]).unwrap();
        prop_assert!(left.is_isomorphic(&right));
    }

    #[test]
    fn random_maps_obey_the_class_chain(a in algebra(), seed in prop::collection::vec(any::<u16>(), 9)) {
        let map: Vec<usize> = a.elements().map(|x| usize::from(seed[x]) % a.size()).collect();
        let s = StateOperator::new(&a, map).unwrap();
        let v = s.verdict();
        prop_assert!(!v.morphism || v.strong);
        prop_assert!(!v.strong || v.state);
        if s.is_state() {
            no_failure(&consequence_checks(&a, s.map()))?;
        }
    }

    #[test]
    fn enumerated_operators_satisfy_consequences(a in algebra(), pick in any::<prop::sample::Index>()) {
        let ops = enumerate_operators(&a, SearchClass::State);
        prop_assert!(!ops.is_empty());
        let s = &ops[pick.index(ops.len())];
        no_failure(&consequence_checks(&a, s.map()))?;
        no_failure(&arrow_checks(&a, s.map()))?;
        no_failure(&linear_checks(&a, s.map(), s.is_strong()))?;
        if s.is_strong() {
            no_failure(&strong_checks(&a, s.map()))?;
        }
        if a.elements().all(|x| a.is_idempotent(x)) {
            prop_assert!(s.is_morphism() && s.preserves_impl());
        }
    }

    #[test]
    fn pruned_search_matches_brute_force(n in 1usize..=4, spec in chain_spec()) {
        let a = ordinal_sum(&[mv_chain(n), build_str(&spec).unwrap().algebra]).unwrap();
        prop_assume!(a.size() <= 6);
        let pruned: Vec<Vec<usize>> =
            enumerate_operators(&a, SearchClass::State).iter().map(|s| s.map().to_vec()).collect();
        prop_assert_eq!(brute_force_operators(&a, SearchClass::State), pruned);
    }

    #[test]
    fn bosbach_and_riecan_agree(a in algebra(), nums in prop::collection::vec(0i64..=6, 9)) {
        let values = a.elements().map(|x| rational(nums[x], 6)).collect();
        let v = check_state(&a, &RationalState::new(&a, values).unwrap());
        prop_assert_eq!(v.bosbach, v.riecan);
        no_failure(&v.checks)?;
    }

    #[test]
    fn mixtures_of_extremal_states_are_states(a in algebra(), raw in prop::collection::vec(any::<u8>(), 1..6)) {
        let gens = extremal_states(&a).extremal_states;
        prop_assume!(!gens.is_empty());
        let weights = normalise(&raw.iter().cycle().take(gens.len()).copied().collect::<Vec<_>>());
        let s = mix(&gens, &weights);
        let v = check_state(&a, &s);
        prop_assert!(v.bosbach && v.riecan);
        no_failure(&v.checks)?;
        prop_assert_eq!(v.extremal, gens.len() == 1);
        prop_assert_eq!(hull_coefficients(&gens, &s), Some(weights));
    }

    #[test]
    fn pulled_back_states_are_compatible(
        a in algebra(),
        pick in any::<prop::sample::Index>(),
        raw in prop::collection::vec(any::<u8>(), 1..6),
    ) {
        let ops = enumerate_operators(&a, SearchClass::State);
        let sigma = &ops[pick.index(ops.len())];
        let image = sigma.image(&a).unwrap();
        let gens = extremal_states(&image.algebra).extremal_states;
        let weights = normalise(&raw.iter().cycle().take(gens.len()).copied().collect::<Vec<_>>());
        let pulled = pull_back_state(&a, sigma, &image, &mix(&gens, &weights)).unwrap();
        prop_assert!(check_state(&a, &pulled).bosbach);
        for x in a.elements() {
            for y in a.elements() {
                if sigma.apply(x) == sigma.apply(y) {
                    prop_assert_eq!(pulled.get(x), pulled.get(y));
                }
            }
        }
    }
}
