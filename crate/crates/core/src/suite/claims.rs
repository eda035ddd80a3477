/// Every claim the suite evaluates, with a one-line statement.
pub const CLAIMS: &[(&str, &str)] = &[
    (
        "enum.class-filter",
        "the strong, morphism and endomorphism searches return the matching subsets of all state-operators",
    ),
    ("enum.idempotent-endomorphism", "when x*x = x for all x, every state-operator is an endomorphism"),
    ("enum.locally-finite-identity", "on a locally finite algebra the identity is the only state-operator"),
    ("enum.pruned-brute-force", "the pruned search finds exactly the maps the unpruned scan accepts"),
    ("filter.maximal-criterion", "a proper filter is maximal iff every outside x has some (x^n)- inside"),
    ("godel.threshold-operators", "on a Godel chain the threshold maps are the state-operators and are endomorphisms"),
    ("irreducible.faithful-image", "with a faithful operator, (A, s) is irreducible iff s(A) is"),
    ("irreducible.image-linear", "an irreducible state algebra has a linearly ordered image"),
    ("irreducible.linear", "a subdirectly irreducible algebra is linearly ordered"),
    ("kernel.state-filter", "the kernel is a state-filter"),
    ("linear.endomorphism", "on a chain every state-operator is an idempotent endomorphism"),
    ("linear.preserves-impl", "on a chain every state-operator preserves ->"),
    ("linear.strong-multiplicative", "on a chain every strong operator preserves *"),
    ("local.image-local", "for radical-faithful morphism operators, A is local iff s(A) is"),
    ("local.ord-criterion", "A is local iff ord(x) or ord(x-) is finite for every x"),
    ("local.primary", "A is local iff every proper filter is primary"),
    ("mv.additive", "on an MV-algebra state-operators are additive on orthogonal pairs"),
    ("mv.axiom-equivalence", "the MV and BL operator axioms agree on the given map"),
    ("mv.exhaustive-scan", "the MV and BL operator axioms agree on every map of a small MV-algebra"),
    ("mv.strong", "on an MV-algebra every state-operator is strong"),
    ("op.class-chain", "morphism implies strong implies state"),
    ("op.dist-bound", "s(x->y) * s(y->x) <= d(s(x), s(y))"),
    ("op.faithful-incomparable", "faithful operators keep incomparable pairs apart"),
    ("op.faithful-linear-identity", "a faithful operator on a chain is the identity"),
    ("op.faithful-strict", "faithful operators are strictly monotone"),
    ("op.idempotent", "s(s(x)) = s(x)"),
    ("op.image-fixed-points", "the image is the set of fixed points"),
    ("op.image-subalgebra", "the image is a subalgebra"),
    ("op.impl-iff-join", "s preserves -> everywhere iff it preserves join everywhere"),
    ("op.impl-iff-meet", "s preserves x->y exactly where it preserves x&y"),
    ("op.impl-implies-prod", "an operator preserving -> is an idempotent endomorphism"),
    ("op.impl-symmetry", "s preserves x->y iff it preserves y->x"),
    ("op.impl-upper-bound", "s(x->y) <= s(x)->s(y), with equality on comparable pairs"),
    ("op.meet-split", "s(x&y) = s(x) * s(x->y)"),
    ("op.monotone", "x <= y implies s(x) <= s(y)"),
    ("op.neg-commute", "s(x-) = s(x)-"),
    ("op.ominus-bound", "s(x)-s(y) <= s(x-y), with equality when x <= y"),
    ("op.oplus-bound", "s(x+y) <= s(x)+s(y), both 1 when x+y = 1"),
    ("op.order-decrease", "for x of finite order, ord(s(x)) <= ord(x) and s(x) is outside the radical"),
    ("op.prod-lower-bound", "s(x)*s(y) <= s(x*y), with equality when x*y = 0"),
    ("op.rejected-diagnosed", "a map expected to fail is rejected and a derived property explains why"),
    ("op.surjective-identity", "a surjective operator is the identity"),
    ("op.top-fixed", "s(1) = 1"),
    ("perfect.negation-order", "on a perfect algebra x in Rad and y in Rad- give x- <= y-"),
    ("perfect.radical-faithful", "A is perfect iff s is radical-faithful and s(A) is perfect"),
    ("primary.quotient-local", "a proper filter is primary iff its quotient is local"),
    ("rad-sigma.image", "s(Rad_s(A)) = Rad(s(A))"),
    ("rad.image-inclusion", "Rad(s(A)) is contained in s(Rad A), with equality for strong operators"),
    ("rad.intersection-formula", "the intersection of maximal filters is the set of co-infinitesimals"),
    ("rad.negation-closure", "negation swaps the radical and its negated copy"),
    ("sfilter.coinfinitesimal", "at a maximal state-filter, a co-infinitesimal class puts s(x) inside"),
    ("sfilter.generated", "the generated state-filter equals its fixpoint closure"),
    ("sfilter.image-correspondence", "maximal state-filters and maximal filters of s(A) correspond"),
    ("sfilter.maximal-criterion", "a state-filter is maximal iff every outside x has some (s(x)^n)- inside"),
    ("simple.locally-finite", "A is simple iff it is a locally finite chain"),
    ("simple.semisimple", "a simple algebra is semisimple"),
    ("ssbl.kernel-maximal", "for morphism operators, s(A) is simple iff the kernel is maximal"),
    ("ssbl.local-kernel-radical", "for radical-faithful morphisms, s(A) is simple iff A is local with Ker = Rad"),
    ("ssbl.simple-algebra", "if A is simple then s(A) is simple"),
    ("sssbl.radical-kernel", "for morphism operators, s(A) is semisimple iff Rad(A) is inside the kernel"),
    ("states.bosbach-riecan", "a map is a Bosbach state iff it is a Riecan state"),
    ("states.compatible-affine", "both directions of the correspondence carry mixtures to mixtures"),
    ("states.compatible-bijection", "extremal compatible states are exactly the pulled-back extremal states of s(A)"),
    ("states.compatible-pullback-restrict", "pulling back a restricted compatible state recovers it"),
    ("states.compatible-restrict-pullback", "restricting a pulled-back state recovers it"),
    ("states.extremal-criteria", "vertex, state-morphism, join-max, Lukasiewicz product and maximal kernel agree"),
    ("states.extremal-vertices", "the quotient states are exactly the vertices of the state polytope"),
    ("states.hull-mixture", "a mixture of extremal states is a state with recoverable weights"),
    ("states.pullback-compatible", "s' o s is a compatible state"),
    ("states.pullback-extremal", "for morphism operators, pulled-back extremal states are extremal"),
    ("states.quotient-distinct", "distinct maximal filters give distinct quotient states"),
    ("states.quotient-extremal", "each quotient state is extremal"),
    ("strong.cross-symmetry", "s(x * s(x-)) = s(x- * s(x))"),
    ("strong.ominus-comparable", "s(x-y) = s(x)-s(y) for comparable x, y"),
    ("strong.prod-equality", "s(x*y) = s(x)*s(y) when x- <= y"),
    ("summand.fixes-chain", "state-operators fix the lower chain and keep the upper summand"),
    ("summand.idempotent-extremes", "the idempotent operator at 0_1 raises every coordinate and at 1 is the identity"),
    ("summand.idempotent-operator", "covering idempotents give endomorphisms"),
    ("summand.operator-count", "there are at least 2^k state-operators"),
    ("summand.subset-operators", "the 2^k coordinate operators are distinct endomorphisms"),
];

pub fn is_claim(id: &str) -> bool {
    CLAIMS.binary_search_by(|(c, _)| c.cmp(&id)).is_ok()
}

pub fn describe(id: &str) -> Option<&'static str> {
    CLAIMS.binary_search_by(|(c, _)| c.cmp(&id)).ok().map(|i| CLAIMS[i].1)
}

/// Whether `claim` is selected by a filter item: an exact id or a group
/// prefix such as `states`.
pub fn matches(claim: &str, item: &str) -> bool {
    claim == item || claim.strip_prefix(item).is_some_and(|rest| rest.starts_with('.'))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_unique() {
        assert!(CLAIMS.windows(2).all(|w| w[0].0 < w[1].0));
        assert!(is_claim("op.top-fixed"));
        assert!(matches("states.hull-mixture", "states"));
        assert!(!matches("states.hull-mixture", "state"));
    }
}
