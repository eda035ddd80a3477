//! Pulling states back along a state-operator and the correspondence between
//! σ-compatible states on `A` and states on `σ(A)`.

use num_traits::{One, Zero};

use super::extremal::{bosbach_equations, extremal_states, mix, polytope_vertices};
use super::linear::{Equation, Q};
use super::{check_state, rational, RationalState};
use crate::algebra::{AlgebraError, BlAlgebra, Subalgebra};
use crate::operators::StateOperator;
use crate::report::Check;

fn require_state_operator(sigma: &StateOperator) -> Result<(), AlgebraError> {
    if sigma.is_state() {
        Ok(())
    } else {
        Err(AlgebraError::NotAStateOperator)
    }
}

/// `x ↦ s(σ(x))` for a state `s` on the image subalgebra.
pub fn pull_back_state(
    a: &BlAlgebra,
    sigma: &StateOperator,
    image: &Subalgebra,
    s: &RationalState,
) -> Result<RationalState, AlgebraError> {
    require_state_operator(sigma)?;
    let v = check_state(&image.algebra, s);
    if !v.bosbach {
        return Err(AlgebraError::NotAState(format!("Bosbach identity fails at {:?}", v.bosbach_witness)));
    }
    Ok(compose(a, sigma, image, s))
}

fn compose(a: &BlAlgebra, sigma: &StateOperator, image: &Subalgebra, s: &RationalState) -> RationalState {
    RationalState::from_values(
        a.elements()
            .map(|x| {
                let i = image.local_index(sigma.apply(x)).expect("σ(x) lies in the image");
                s.get(i).clone()
            })
            .collect(),
    )
}

fn restrict(image: &Subalgebra, s: &RationalState) -> RationalState {
    RationalState::from_values(image.embedding.iter().map(|&x| s.get(x).clone()).collect())
}

fn is_compatible(a: &BlAlgebra, sigma: &StateOperator, s: &RationalState) -> bool {
    a.elements().all(|x| a.elements().all(|y| sigma.apply(x) != sigma.apply(y) || s.get(x) == s.get(y)))
}

#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    pub image: Subalgebra,
    /// Extremal states on `σ(A)`, in image indices.
    pub image_extremal: Vec<RationalState>,
    /// Vertices of the σ-compatible states, computed directly on `A`;
    /// `None` when the vertex search is too large.
    pub compatible_extremal: Option<Vec<RationalState>>,
    /// `s' ↦ s'∘σ` applied to `image_extremal`.
    pub pulled_back: Vec<RationalState>,
    /// Only the affine bijection is certified, not any topology.
    pub checks: Vec<Check>,
}

pub fn sigma_compatible_correspondence(
    a: &BlAlgebra,
    sigma: &StateOperator,
) -> Result<CompatibilityReport, AlgebraError> {
    require_state_operator(sigma)?;
    let image = sigma.image(a)?;
    let image_extremal = extremal_states(&image.algebra).extremal_states;
    let pulled_back: Vec<RationalState> = image_extremal.iter().map(|s| compose(a, sigma, &image, s)).collect();

    let n = a.size();
    let mut eqs = bosbach_equations(a);
    for x in a.elements() {
        let y = sigma.apply(x);
        if x != y {
            let mut coeffs = vec![Q::zero(); n];
            coeffs[x] = Q::one();
            coeffs[y] = -Q::one();
            eqs.push(Equation { coeffs, rhs: Q::zero() });
        }
    }
    let compatible_extremal = polytope_vertices(a, eqs);

    let mut checks = Vec::new();
    let bad_pullback = pulled_back.iter().find(|s| !check_state(a, s).bosbach || !is_compatible(a, sigma, s));
    checks.push(Check::from_bool("states.pullback-compatible", bad_pullback.is_none(), || {
        format!("{} is not a σ-compatible state", bad_pullback.expect("present"))
    }));

    checks.push(if sigma.is_morphism() {
        let bad = pulled_back.iter().find(|s| !check_state(a, s).extremal);
        Check::from_bool("states.pullback-extremal", bad.is_none(), || {
            format!("pull-back {} is not extremal", bad.expect("present"))
        })
    } else {
        Check::inapplicable("states.pullback-extremal", "operator is not a state-morphism")
    });

    let round_trip = image_extremal.iter().zip(&pulled_back).all(|(s, p)| restrict(&image, p) == *s);
    checks.push(Check::from_bool("states.compatible-restrict-pullback", round_trip, || {
        "restricting a pulled-back state does not recover it".into()
    }));

    match &compatible_extremal {
        Some(vertices) => {
            let back = vertices.iter().all(|s| compose(a, sigma, &image, &restrict(&image, s)) == *s);
            checks.push(Check::from_bool("states.compatible-pullback-restrict", back, || {
                "pulling back a restricted compatible state does not recover it".into()
            }));
            let mut expected = pulled_back.clone();
            expected.sort();
            checks.push(Check::from_bool("states.compatible-bijection", *vertices == expected, || {
                format!("{} compatible vertices, {} image extremal states", vertices.len(), expected.len())
            }));
        }
        None => {
            checks.push(Check::inapplicable("states.compatible-pullback-restrict", "vertex search too large"));
            checks.push(Check::inapplicable("states.compatible-bijection", "vertex search too large"));
        }
    }

    let weights = [rational(1, 3), rational(2, 3)];
    let k = image_extremal.len();
    let affine = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).all(|(i, j)| {
        let pair = [image_extremal[i].clone(), image_extremal[j].clone()];
        let m = mix(&pair, &weights);
        let pulled = [pulled_back[i].clone(), pulled_back[j].clone()];
        compose(a, sigma, &image, &m) == mix(&pulled, &weights) && restrict(&image, &mix(&pulled, &weights)) == m
    });
    checks.push(Check::from_bool("states.compatible-affine", affine, || {
        "a mixture is not carried to the same mixture".into()
    }));

    Ok(CompatibilityReport { image, image_extremal, compatible_extremal, pulled_back, checks })
}
