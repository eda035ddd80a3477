//! Kernels, state-filters (σ-closed filters), their generation and
//! maximality, `Rad_σ` and the correspondence with filters of `σ(A)`.

use super::StateOperator;
use crate::algebra::{AlgebraError, BlAlgebra, ElementId, Subalgebra};
use crate::constructors::quotient_by_filter;
use crate::filters::{
    all_filters, maximal_among, product_closure, radical, subdirectly_irreducible, up_closure, Filter,
};
use crate::report::Check;
use crate::set::ElementSet;

/// `{x : σ(x) = 1}`
pub fn kernel(a: &BlAlgebra, sigma: &StateOperator) -> Filter {
    Filter::unchecked(ElementSet::from_elements(a.size(), a.elements().filter(|&x| sigma.apply(x) == a.top())))
}

/// `σ(x) ∈ Rad(A)` implies `x ∈ Rad(A)`. The error is an offending `x`.
pub fn radical_faithful(a: &BlAlgebra, sigma: &StateOperator) -> Result<(), ElementId> {
    let rad = radical(a);
    match a.elements().find(|&x| rad.contains(sigma.apply(x)) && !rad.contains(x)) {
        Some(x) => Err(x),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub kernel: Filter,
    /// Kernel is `{1}`.
    pub faithful: bool,
    pub radical_faithful: bool,
    pub radical_faithful_witness: Option<ElementId>,
}

pub fn kernel_and_faithfulness(a: &BlAlgebra, sigma: &StateOperator) -> KernelReport {
    let kernel = kernel(a, sigma);
    let rf = radical_faithful(a, sigma);
    KernelReport {
        faithful: kernel.is_trivial(),
        kernel,
        radical_faithful: rf.is_ok(),
        radical_faithful_witness: rf.err(),
    }
}

/// Every σ-closed filter, in the order of [`all_filters`].
pub fn state_filters(a: &BlAlgebra, sigma: &StateOperator) -> Vec<Filter> {
    all_filters(a).into_iter().filter(|f| f.is_sigma_closed(sigma)).collect()
}

/// Least state-filter containing `xs`, as the up-set of the finite products
/// of the elements `x ⊙ σ(x)`, `x ∈ xs`. Checked against
/// [`state_filter_generated_by_fixpoint`].
pub fn state_filter_generated(a: &BlAlgebra, sigma: &StateOperator, xs: &[ElementId]) -> Filter {
    let mut gens = ElementSet::from_elements(a.size(), xs.iter().map(|&x| a.prod(x, sigma.apply(x))));
    gens.insert(a.top());
    product_closure(a, &mut gens);
    let by_formula = up_closure(a, &gens);
    let by_fixpoint = state_filter_generated_by_fixpoint(a, sigma, xs);
    assert_eq!(&by_formula, by_fixpoint.members(), "generated state-filter: formula and fixpoint disagree");
    Filter::unchecked(by_formula)
}

/// Least state-filter containing `xs`, by closing under σ, products and
/// upward until nothing changes.
pub fn state_filter_generated_by_fixpoint(a: &BlAlgebra, sigma: &StateOperator, xs: &[ElementId]) -> Filter {
    let mut s = ElementSet::from_elements(a.size(), xs.iter().copied().chain([a.top()]));
    loop {
        let before = s.len();
        for x in s.to_vec() {
            s.insert(sigma.apply(x));
        }
        product_closure(a, &mut s);
        s = up_closure(a, &s);
        if s.len() == before {
            return Filter::unchecked(s);
        }
    }
}

/// State-filter generated by a state-filter `f` and an element `x`: the
/// up-set of `i ⊙ (x ⊙ σx)^k`, `i ∈ f`, `k >= 1`.
pub fn state_filter_extension(
    a: &BlAlgebra,
    sigma: &StateOperator,
    f: &Filter,
    x: ElementId,
) -> Result<Filter, AlgebraError> {
    if !crate::filters::is_filter(a, f.members()) || !f.is_sigma_closed(sigma) {
        return Err(AlgebraError::NotAStateFilter);
    }
    let g = a.prod(x, sigma.apply(x));
    let lows = ElementSet::from_elements(
        a.size(),
        f.members().iter().flat_map(|i| a.powers(g).into_iter().map(move |p| a.prod(i, p))),
    );
    Ok(Filter::unchecked(up_closure(a, &lows)))
}

/// Proper state-filters not strictly contained in another proper state-filter.
pub fn maximal_state_filters(a: &BlAlgebra, sigma: &StateOperator) -> Vec<Filter> {
    maximal_among(a, &state_filters(a, sigma))
}

/// Every `x ∉ F` has some `k` with `(σ(x)^k)⁻ ∈ F`.
pub fn is_maximal_state_filter_by_criterion(a: &BlAlgebra, sigma: &StateOperator, f: &Filter) -> bool {
    f.is_proper(a)
        && a.elements()
            .filter(|&x| !f.contains(x))
            .all(|x| a.powers(sigma.apply(x)).into_iter().any(|p| f.contains(a.neg(p))))
}

/// Intersection of the maximal state-filters.
pub fn rad_sigma(a: &BlAlgebra, sigma: &StateOperator) -> Filter {
    let members =
        maximal_state_filters(a, sigma).iter().fold(ElementSet::full(a.size()), |acc, f| acc.intersection(f.members()));
    Filter::unchecked(members)
}

fn image_of(sigma: &StateOperator, s: &ElementSet) -> ElementSet {
    s.map(|x| sigma.apply(x))
}

fn lift(a: &BlAlgebra, image: &Subalgebra, local: &ElementSet) -> ElementSet {
    ElementSet::from_elements(a.size(), local.iter().map(|i| image.embedding[i]))
}

fn restrict(image: &Subalgebra, s: &ElementSet) -> ElementSet {
    ElementSet::from_elements(image.algebra.size(), s.iter().filter_map(|x| image.local_index(x)))
}

/// Checks the generation formulas, the maximality criterion and the
/// correspondence between state-filters of `A` and filters of `σ(A)`.
pub fn state_filter_checks(a: &BlAlgebra, sigma: &StateOperator) -> Vec<Check> {
    if !sigma.is_state() {
        return vec![Check::inapplicable("sfilter.generated", "map is not a state-operator")];
    }
    let mut checks = Vec::new();
    let sfs = state_filters(a, sigma);
    let maximal = maximal_among(a, &sfs);
    let image = sigma.image(a).expect("the image of a state-operator is a subalgebra");
    let image_set = sigma.image_set();

    let kern = kernel(a, sigma);
    checks.push(Check::from_bool(
        "kernel.state-filter",
        crate::filters::is_filter(a, kern.members()) && kern.is_sigma_closed(sigma),
        || format!("kernel {} is not a σ-closed filter", kern.members().display(a)),
    ));

    let mut generated = None;
    'gen: for x in a.elements() {
        let formula = {
            let mut g = ElementSet::from_elements(a.size(), [a.prod(x, sigma.apply(x)), a.top()]);
            product_closure(a, &mut g);
            up_closure(a, &g)
        };
        if &formula != state_filter_generated_by_fixpoint(a, sigma, &[x]).members() {
            generated = Some(vec![x]);
            break;
        }
        for f in &sfs {
            if f.contains(x) {
                continue;
            }
            let ext = state_filter_extension(a, sigma, f, x).expect("scanned state-filters are state-filters");
            let mut seeds = f.to_vec();
            seeds.push(x);
            if ext != state_filter_generated_by_fixpoint(a, sigma, &seeds) {
                generated = Some(seeds);
                break 'gen;
            }
        }
    }
    checks.push(Check::from_witness("sfilter.generated", generated, |w| {
        format!("closure formula and fixpoint closure differ for generators {w:?}")
    }));

    let crit = sfs
        .iter()
        .filter(|f| f.is_proper(a))
        .find(|f| maximal.contains(f) != is_maximal_state_filter_by_criterion(a, sigma, f));
    checks.push(Check::from_witness("sfilter.maximal-criterion", crit.map(|f| f.to_vec()), |_| {
        "containment-maximality and the negated σ-power criterion disagree".into()
    }));

    // Forward: I ↦ σ(I) = I ∩ σ(A).
    let image_filters: Vec<ElementSet> = all_filters(&image.algebra).iter().map(|f| f.members().clone()).collect();
    let image_maximal: Vec<ElementSet> =
        crate::filters::maximal_filters(&image.algebra).iter().map(|f| f.members().clone()).collect();
    let mut corr = None;
    for f in &sfs {
        let sigma_f = image_of(sigma, f.members());
        let local = restrict(&image, &sigma_f);
        let ok = sigma_f == f.members().intersection(&image_set)
            && image_filters.contains(&local)
            && (!maximal.contains(f) || image_maximal.contains(&local));
        if !ok {
            corr = Some(f.to_vec());
            break;
        }
    }
    // Backward: J ↦ σ⁻¹(J).
    if corr.is_none() {
        for j in &image_filters {
            let up = sigma.preimage(&lift(a, &image, j));
            let is_sf = sfs.iter().any(|f| f.members() == &up);
            let back = restrict(&image, &up.intersection(&image_set)) == *j;
            let max_ok = !image_maximal.contains(j) || maximal.iter().any(|f| f.members() == &up);
            if !(is_sf && back && max_ok) {
                corr = Some(lift(a, &image, j).to_vec());
                break;
            }
        }
    }
    checks.push(Check::from_witness("sfilter.image-correspondence", corr, |w| {
        format!("state-filter / image-filter correspondence fails at {w:?}")
    }));

    let rs = rad_sigma(a, sigma);
    let rad_image = lift(a, &image, radical(&image.algebra).members());
    let rad_a = radical(a);
    checks.push(Check::from_bool("rad-sigma.image", image_of(sigma, rs.members()) == rad_image, || {
        format!("σ(Rad_σ) = {} but Rad(σ(A)) = {}", image_of(sigma, rs.members()).display(a), rad_image.display(a))
    }));

    let sigma_rad = image_of(sigma, rad_a.members());
    let inclusion = rad_image.is_subset(&sigma_rad);
    let equal = rad_image == sigma_rad;
    checks.push(Check::from_bool("rad.image-inclusion", inclusion && (!sigma.is_strong() || equal), || {
        format!(
            "Rad(σ(A)) = {}, σ(Rad A) = {}, strong: {}",
            rad_image.display(a),
            sigma_rad.display(a),
            sigma.is_strong()
        )
    }));

    let mut coinf = None;
    for f in &maximal {
        let q = quotient_by_filter(a, f).expect("state-filters are filters");
        if let Some(x) = a.elements().find(|&x| {
            let s = sigma.apply(x);
            q.algebra.is_co_infinitesimal(q.projection[s]) && !f.contains(s)
        }) {
            coinf = Some(vec![x]);
            break;
        }
    }
    checks.push(Check::from_witness("sfilter.coinfinitesimal", coinf, |_| {
        "σ(x) is co-infinitesimal modulo a maximal state-filter without belonging to it".into()
    }));

    let irr = subdirectly_irreducible(a, Some(sigma));
    if irr.irreducible {
        checks.push(Check::from_witness(
            "irreducible.image-linear",
            image.algebra.incomparable_pair().map(|(x, y)| vec![image.embedding[x], image.embedding[y]]),
            |_| "irreducible state algebra with a non-linear image".into(),
        ));
    } else {
        checks.push(Check::inapplicable("irreducible.image-linear", "not subdirectly irreducible"));
    }
    if kern.is_trivial() {
        let image_irr = subdirectly_irreducible(&image.algebra, None).irreducible;
        checks.push(Check::from_bool("irreducible.faithful-image", irr.irreducible == image_irr, || {
            format!("(A, σ) irreducible: {}, σ(A) irreducible: {image_irr}", irr.irreducible)
        }));
    } else {
        checks.push(Check::inapplicable("irreducible.faithful-image", "kernel is not {1}"));
    }
    checks
}
