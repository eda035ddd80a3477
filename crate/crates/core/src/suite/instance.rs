//! Every claim evaluated on one corpus instance.

use num_traits::Zero;

use crate::algebra::{BlAlgebra, ElementId};
use crate::builtin::Instance;
use crate::filters::{classify_algebra, subdirectly_irreducible};
use crate::operators::{
    arrow_checks, brute_force_operators, classify_state_algebra, consequence_checks, covers_upper, enumerate_operators,
    godel_checks, idempotent_operator, idempotents, linear_checks, mv_equivalence_check, mv_exhaustive_scan,
    strong_checks, subset_operator, summand_checks, summand_shape, SearchClass, StateOperator,
};
use crate::report::Check;
use crate::states::{
    check_state, exhaustive_bosbach_riecan, extremal_states, farey, hull_coefficients, mix, rational,
    sigma_compatible_correspondence,
};

/// Largest carrier on which every state-operator is enumerated; larger
/// instances are checked on their named and stock operators.
pub const ENUMERATION_LIMIT: usize = 12;
/// Largest carrier for the unpruned `n^n` cross-checks.
pub const BRUTE_FORCE_LIMIT: usize = 6;
/// Largest carrier for the exhaustive rational-map state scan.
pub const STATE_SCAN_LIMIT: usize = 5;
/// Denominator bound of that scan.
pub const STATE_SCAN_DENOMINATOR: i64 = 4;

fn dedup_push(ops: &mut Vec<StateOperator>, op: StateOperator) {
    if op.is_state() && !ops.iter().any(|o| o.map() == op.map()) {
        ops.push(op);
    }
}

/// The state-operators the per-operator claims run against.
fn operators_under_test(inst: &Instance, enumerated: Option<&[StateOperator]>) -> Vec<StateOperator> {
    let a = &inst.algebra;
    let mut ops: Vec<StateOperator> = match enumerated {
        Some(all) => all.to_vec(),
        None => {
            let mut ops = vec![StateOperator::identity(a)];
            if let Some((shape, iso)) = summand_shape(a) {
                let built = shape.build();
                let carry = |op: &StateOperator| {
                    let mut map = vec![0; a.size()];
                    for x in built.elements() {
                        map[iso[x]] = iso[op.apply(x)];
                    }
                    StateOperator::new(a, map).expect("well-formed map")
                };
                for j in 0..(1u64 << shape.factors().len()) {
                    dedup_push(&mut ops, carry(&subset_operator(&shape, &built, j)));
                }
                for e in idempotents(&built) {
                    if shape.in_upper(e) && covers_upper(&shape, &built, e) {
                        let op = idempotent_operator(&shape, &built, e).expect("upper idempotent");
                        dedup_push(&mut ops, carry(&op));
                    }
                }
            }
            ops
        }
    };
    for (_, op) in &inst.operators {
        if op.is_state() {
            dedup_push(&mut ops, op.clone());
        }
    }
    ops
}

fn algebra_checks(a: &BlAlgebra, enumerated: Option<&[StateOperator]>, out: &mut Vec<Check>) {
    let classification = classify_algebra(a);
    out.extend(classification.checks.iter().cloned());

    let irr = subdirectly_irreducible(a, None);
    out.push(Check::from_bool("irreducible.linear", !irr.irreducible || a.is_linear(), || {
        "subdirectly irreducible but not linear".into()
    }));
    out.extend(godel_checks(a));
    if let Some((shape, iso)) = summand_shape(a) {
        let built = shape.build();
        out.extend(summand_checks(&shape, &built).into_iter().map(|mut c| {
            c.witness = c.witness.iter().map(|&x| iso[x]).collect();
            c
        }));
    }

    match enumerated {
        Some(all) => {
            let identity_only = all.len() == 1 && all[0].map().iter().enumerate().all(|(i, &v)| i == v);
            out.push(if classification.locally_finite {
                Check::from_bool("enum.locally-finite-identity", identity_only, || {
                    format!("{} state-operators on a locally finite algebra", all.len())
                })
            } else {
                Check::inapplicable("enum.locally-finite-identity", "algebra is not locally finite")
            });
            let all_idempotent = a.elements().all(|x| a.is_idempotent(x));
            out.push(if all_idempotent {
                let bad = all.iter().find(|s| !(s.is_morphism() && s.preserves_impl()));
                Check::from_bool("enum.idempotent-endomorphism", bad.is_none(), || {
                    format!("{:?} is not an endomorphism", bad.expect("present").labels(a))
                })
            } else {
                Check::inapplicable("enum.idempotent-endomorphism", "some element is not idempotent")
            });
            let classes_ok = [SearchClass::Strong, SearchClass::Morphism, SearchClass::Endomorphism].iter().all(|&c| {
                let direct: Vec<Vec<ElementId>> = enumerate_operators(a, c).iter().map(|s| s.map().to_vec()).collect();
                let filtered: Vec<Vec<ElementId>> =
                    all.iter().filter(|s| c.contains(s)).map(|s| s.map().to_vec()).collect();
                direct == filtered
            });
            out.push(Check::from_bool("enum.class-filter", classes_ok, || {
                "a class search disagrees with filtering the state-operators".into()
            }));
            out.push(if a.size() <= BRUTE_FORCE_LIMIT {
                let brute = brute_force_operators(a, SearchClass::State);
                let pruned: Vec<Vec<ElementId>> = all.iter().map(|s| s.map().to_vec()).collect();
                Check::from_bool("enum.pruned-brute-force", brute == pruned, || {
                    format!("pruned search found {}, brute force {}", pruned.len(), brute.len())
                })
            } else {
                Check::inapplicable("enum.pruned-brute-force", "carrier too large for the unpruned scan")
            });
        }
        None => {
            for claim in [
                "enum.locally-finite-identity",
                "enum.idempotent-endomorphism",
                "enum.class-filter",
                "enum.pruned-brute-force",
            ] {
                out.push(Check::inapplicable(claim, "carrier too large to enumerate"));
            }
        }
    }

    if a.is_mv() && a.size() <= BRUTE_FORCE_LIMIT {
        let (count, disagreement) = mv_exhaustive_scan(a).expect("MV-algebra");
        out.push(match disagreement {
            None => Check { note: format!("{count} maps satisfy both"), ..Check::pass("mv.exhaustive-scan") },
            Some(map) => Check::fail("mv.exhaustive-scan", map, "the two axiom systems disagree on this map"),
        });
    } else {
        out.push(Check::inapplicable(
            "mv.exhaustive-scan",
            if a.is_mv() { "carrier too large for the exhaustive scan" } else { "not an MV-algebra" },
        ));
    }

    state_space_checks(a, out);
}

fn state_space_checks(a: &BlAlgebra, out: &mut Vec<Check>) {
    if a.is_trivial() {
        out.push(Check::inapplicable("states.quotient-extremal", "one-element algebra has no states"));
        return;
    }
    let space = extremal_states(a);
    out.extend(space.checks.iter().cloned());
    for s in &space.extremal_states {
        out.extend(check_state(a, s).checks);
    }
    if a.size() <= STATE_SCAN_LIMIT {
        let (scanned, states, bad) = exhaustive_bosbach_riecan(a, &farey(STATE_SCAN_DENOMINATOR));
        out.push(match bad {
            None => Check {
                note: format!("{scanned} maps scanned, {states} states"),
                ..Check::pass("states.bosbach-riecan")
            },
            Some(s) => Check::fail(
                "states.bosbach-riecan",
                Vec::new(),
                format!(
                    "the definitions disagree on {:?}",
                    s.iter().map(crate::states::format_rational).collect::<Vec<_>>()
                ),
            ),
        });
    }
    let gens = &space.extremal_states;
    if gens.is_empty() {
        out.push(Check::inapplicable("states.hull-mixture", "no extremal states"));
    } else {
        let total = (gens.len() * (gens.len() + 1) / 2) as i64;
        let weights: Vec<_> = (1..=gens.len() as i64).map(|i| rational(i, total)).collect();
        let m = mix(gens, &weights);
        let verdict = check_state(a, &m);
        let recovered = hull_coefficients(gens, &m);
        out.push(Check::from_bool(
            "states.hull-mixture",
            verdict.bosbach && recovered.as_ref() == Some(&weights) && weights.iter().all(|w| !w.is_zero()),
            || format!("mixture {m}: state {}, weights {recovered:?}", verdict.bosbach),
        ));
        out.extend(verdict.checks);
    }
}

fn operator_checks(a: &BlAlgebra, sigma: &StateOperator, out: &mut Vec<Check>) {
    let context = format!("σ = [{}]", sigma.labels(a).join(", "));
    let mut checks = vec![sigma.verdict().chain.clone()];
    let s = sigma.map();
    checks.extend(consequence_checks(a, s));
    if sigma.is_strong() {
        checks.extend(strong_checks(a, s));
    }
    checks.extend(arrow_checks(a, s));
    checks.extend(linear_checks(a, s, sigma.is_strong()));
    checks.extend(classify_state_algebra(a, sigma).expect("state-operator").checks);
    if a.is_mv() {
        checks.extend(mv_equivalence_check(a, sigma).expect("MV-algebra").checks);
    }
    if !a.is_trivial() {
        checks.extend(sigma_compatible_correspondence(a, sigma).expect("state-operator").checks);
    }
    out.extend(checks.into_iter().map(|c| c.with_context(&context)));
}

fn named_operator_checks(inst: &Instance, out: &mut Vec<Check>) {
    for (name, op) in &inst.operators {
        let expected_rejection = inst.rejected.contains(name);
        if !expected_rejection && op.is_state() {
            continue;
        }
        let context = format!("operator {name}");
        let check = if !expected_rejection {
            Check::fail("op.rejected-diagnosed", Vec::new(), "operator is not a state-operator")
        } else if op.is_state() {
            Check::fail("op.rejected-diagnosed", Vec::new(), "operator was expected to be rejected")
        } else {
            match &op.verdict().diagnostic {
                Some(d) => Check {
                    note: format!("{}: {}", d.claim, d.note),
                    witness: d.witness.clone(),
                    ..Check::pass("op.rejected-diagnosed")
                },
                None => Check::fail("op.rejected-diagnosed", Vec::new(), "rejected, but no derived property fails"),
            }
        };
        out.push(check.with_context(&context));
        if !op.is_state() {
            out.push(op.verdict().chain.clone().with_context(&context));
        }
    }
}

/// All checks for one instance, in a fixed order.
pub fn instance_checks(inst: &Instance) -> Vec<Check> {
    let a = &inst.algebra;
    let enumerated = (a.size() <= ENUMERATION_LIMIT).then(|| enumerate_operators(a, SearchClass::State));
    let mut out = Vec::new();
    algebra_checks(a, enumerated.as_deref(), &mut out);
    for sigma in operators_under_test(inst, enumerated.as_deref()) {
        operator_checks(a, &sigma, &mut out);
    }
    named_operator_checks(inst, &mut out);
    out
}
