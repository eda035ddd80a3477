//! Enumeration stays fast at the sizes the search is meant for: ten elements
//! for the state class, twelve for morphisms.

use std::time::{Duration, Instant};

use blstate::builtin::build_str;
use blstate::operators::{enumerate_operators, enumerate_operators_with, SearchClass};

const LIMIT: Duration = Duration::from_secs(20);

fn timed(spec: &str, class: SearchClass, size: usize) -> usize {
    let a = build_str(spec).unwrap().algebra;
    assert_eq!(a.size(), size, "{spec}");
    let start = Instant::now();
    let ops = enumerate_operators(&a, class);
    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT, "{spec}: {elapsed:?}");
    assert!(ops.iter().all(|s| class.contains(s)));
    let parallel = enumerate_operators_with(&a, class, true);
    assert_eq!(
        ops.iter().map(|s| s.map()).collect::<Vec<_>>(),
        parallel.iter().map(|s| s.map()).collect::<Vec<_>>(),
        "{spec}: parallel search differs"
    );
    ops.len()
}

#[test]
fn state_class_on_ten_elements() {
    assert_eq!(timed("mv-chain(9)", SearchClass::State, 10), 1);
    assert_eq!(timed("godel-chain(10)", SearchClass::State, 10), 9);
    assert_eq!(timed("ordinal-sum(mv-chain(4),mv-chain(5))", SearchClass::State, 10), 2);
    assert_eq!(timed("product(mv-chain(1),mv-chain(4))", SearchClass::State, 10), 2);
    assert_eq!(timed("product(godel-chain(2),godel-chain(5))", SearchClass::State, 10), 9);
    assert_eq!(timed("ordinal-sum(godel-chain(3),product(mv-chain(1),mv-chain(2)))", SearchClass::State, 8), 6);
}

#[test]
fn morphism_class_on_twelve_elements() {
    assert_eq!(timed("product(mv-chain(2),mv-chain(3))", SearchClass::Morphism, 12), 1);
    assert_eq!(timed("godel-chain(12)", SearchClass::Morphism, 12), 11);
    assert_eq!(timed("product(godel-chain(3),godel-chain(4))", SearchClass::Morphism, 12), 15);
    assert_eq!(timed("product(mv-chain(1),mv-chain(5))", SearchClass::Morphism, 12), 2);
    assert_eq!(timed("product(godel-chain(2),godel-chain(6))", SearchClass::Morphism, 12), 11);
}
