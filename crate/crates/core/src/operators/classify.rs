//! Simple, semisimple, local and perfect state algebras, and the search for
//! state-operators that are not strong.

use super::state_filters::{kernel_and_faithfulness, rad_sigma, state_filter_checks, KernelReport};
use super::{enumerate_operators_with, SearchClass, StateOperator};
use crate::algebra::{AlgebraError, BlAlgebra, Subalgebra};
use crate::filters::{
    classify_algebra, is_maximal_by_criterion, maximal_filters, radical, AlgebraClassification, Filter,
};
use crate::report::{Check, Verdict};
use crate::set::ElementSet;

#[derive(Clone, Debug)]
pub struct StateAlgebraClassification {
    /// `σ(A)` is simple.
    pub ssbl_simple: bool,
    /// `Rad(σ(A)) = {1}`.
    pub sssbl_semisimple: bool,
    pub radical_faithful: bool,
    pub ker: Filter,
    pub kernel: KernelReport,
    pub rad_sigma: Filter,
    pub image: Subalgebra,
    /// The plain classification of `A`.
    pub algebra: AlgebraClassification,
    /// The plain classification of `σ(A)`, in subalgebra indices.
    pub image_classification: AlgebraClassification,
    pub checks: Vec<Check>,
}

pub fn classify_state_algebra(
    a: &BlAlgebra,
    sigma: &StateOperator,
) -> Result<StateAlgebraClassification, AlgebraError> {
    if !sigma.is_state() {
        return Err(AlgebraError::NotAStateOperator);
    }
    let image = sigma.image(a)?;
    let algebra = classify_algebra(a);
    let image_classification = classify_algebra(&image.algebra);
    let kernel = kernel_and_faithfulness(a, sigma);
    let ker = kernel.kernel.clone();
    let rad = radical(a);
    let ssbl_simple = image_classification.simple;
    let sssbl_semisimple = image_classification.semisimple;
    let rf = kernel.radical_faithful;
    let morphism = sigma.is_morphism();

    let mut checks = state_filter_checks(a, sigma);

    checks.push(Check::from_bool("ssbl.simple-algebra", !algebra.simple || ssbl_simple, || {
        "A is simple but σ(A) is not".into()
    }));

    let ker_maximal = maximal_filters(a).contains(&ker);
    debug_assert_eq!(ker_maximal, ker.is_proper(a) && is_maximal_by_criterion(a, &ker));
    checks.push(if morphism {
        Check::from_bool("ssbl.kernel-maximal", ssbl_simple == ker_maximal, || {
            format!("σ(A) simple: {ssbl_simple}, kernel maximal: {ker_maximal}")
        })
    } else {
        Check::inapplicable("ssbl.kernel-maximal", "operator is not a state-morphism")
    });

    let rad_in_ker = rad.is_subset(&ker);
    checks.push(if morphism {
        Check::from_bool("sssbl.radical-kernel", sssbl_semisimple == rad_in_ker, || {
            format!("Rad(σ(A)) trivial: {sssbl_semisimple}, Rad(A) ⊆ Ker: {rad_in_ker}")
        })
    } else {
        Check::inapplicable("sssbl.radical-kernel", "operator is not a state-morphism")
    });

    let rhs = rf && image_classification.perfect;
    let agree = algebra.perfect == rhs;
    let note = || {
        format!(
            "A perfect: {}, radical-faithful: {rf}, σ(A) perfect: {}",
            algebra.perfect, image_classification.perfect
        )
    };
    checks.push(if agree {
        Check::pass("perfect.radical-faithful")
    } else if morphism {
        Check::fail("perfect.radical-faithful", kernel.radical_faithful_witness.into_iter().collect(), note())
    } else {
        Check::logged("perfect.radical-faithful", kernel.radical_faithful_witness.into_iter().collect(), note())
    });

    if morphism && rf {
        let image_local = image_classification.local;
        checks.push(Check::from_bool("local.image-local", algebra.local == image_local, || {
            format!("A local: {}, σ(A) local: {image_local}", algebra.local)
        }));
        let ker_is_rad = ker == rad;
        checks.push(Check::from_bool(
            "ssbl.local-kernel-radical",
            ssbl_simple == (algebra.local && ker_is_rad),
            || format!("σ(A) simple: {ssbl_simple}, A local: {}, Ker = Rad: {ker_is_rad}", algebra.local),
        ));
    } else {
        let why = if morphism { "operator is not radical-faithful" } else { "operator is not a state-morphism" };
        checks.push(Check::inapplicable("local.image-local", why));
        checks.push(Check::inapplicable("ssbl.local-kernel-radical", why));
    }

    Ok(StateAlgebraClassification {
        ssbl_simple,
        sssbl_semisimple,
        radical_faithful: rf,
        ker,
        kernel,
        rad_sigma: rad_sigma(a, sigma),
        image,
        algebra,
        image_classification,
        checks,
    })
}

/// State-operators that are not strong, and state-operators for which
/// `Rad(σ(A))` is a proper subset of `σ(Rad A)`. Both lists are candidates
/// for further study; an empty list settles nothing beyond this algebra.
#[derive(Clone, Debug)]
pub struct NonStrongSearch {
    pub state_count: usize,
    pub strong_count: usize,
    pub not_strong: Vec<StateOperator>,
    pub proper_radical_inclusion: Vec<StateOperator>,
}

pub fn search_nonstrong(a: &BlAlgebra, parallel: bool) -> NonStrongSearch {
    let states = enumerate_operators_with(a, SearchClass::State, parallel);
    let strong_count = states.iter().filter(|s| s.is_strong()).count();
    let not_strong = states.iter().filter(|s| !s.is_strong()).cloned().collect();
    let rad = radical(a);
    let proper_radical_inclusion = states
        .iter()
        .filter(|s| {
            let image = s.image(a).expect("state-operator image is a subalgebra");
            let rad_image: ElementSet = ElementSet::from_elements(
                a.size(),
                radical(&image.algebra).members().iter().map(|i| image.embedding[i]),
            );
            rad_image != rad.members().map(|x| s.apply(x))
        })
        .cloned()
        .collect();
    NonStrongSearch { state_count: states.len(), strong_count, not_strong, proper_radical_inclusion }
}

/// Witness-free summary used by reports: the verdicts that are failures.
pub fn failed_claims(checks: &[Check]) -> Vec<&'static str> {
    checks.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.claim).collect()
}
