//! Exact linear algebra over `BigRational`: row reduction, affine solution
//! sets and vertex enumeration of `{x : Ax = b, 0 <= x <= 1}`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// A linear equation `coeffs · x = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub coeffs: Vec<Q>,
    pub rhs: Q,
}

impl Equation {
    /// `x_i = v`
    pub fn fix(n: usize, i: usize, v: Q) -> Equation {
        let mut coeffs = vec![Q::zero(); n];
        coeffs[i] = Q::one();
        Equation { coeffs, rhs: v }
    }
}

/// Reduced row echelon form of the augmented system. Returns the reduced
/// rows and pivot columns, or `None` if the system is inconsistent.
pub fn rref(n: usize, eqs: &[Equation]) -> Option<(Vec<Equation>, Vec<usize>)> {
    let mut rows: Vec<Equation> = eqs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].coeffs[col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].coeffs[col].recip();
        for c in rows[r].coeffs.iter_mut() {
            *c *= &inv;
        }
        rows[r].rhs *= &inv;
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row.coeffs[col].is_zero() {
                continue;
            }
            let f = row.coeffs[col].clone();
            for (c, pc) in row.coeffs.iter_mut().zip(&pivot_row.coeffs) {
                *c -= &f * pc;
            }
            row.rhs -= &f * &pivot_row.rhs;
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row.rhs.is_zero()) {
        return None;
    }
    rows.truncate(r);
    Some((rows, pivots))
}

pub fn rank(n: usize, eqs: &[Equation]) -> usize {
    let homogeneous: Vec<Equation> =
        eqs.iter().map(|e| Equation { coeffs: e.coeffs.clone(), rhs: Q::zero() }).collect();
    rref(n, &homogeneous).map_or(0, |(rows, _)| rows.len())
}

/// Solution set `x = point + Σ t_j · directions[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub point: Vec<Q>,
    pub directions: Vec<Vec<Q>>,
}

pub fn solve(n: usize, eqs: &[Equation]) -> Option<AffineSpace> {
    let (rows, pivots) = rref(n, eqs)?;
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut point = vec![Q::zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        point[p] = row.rhs.clone();
    }
    let directions = free
        .iter()
        .map(|&f| {
            let mut d = vec![Q::zero(); n];
            d[f] = Q::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                d[p] = -row.coeffs[f].clone();
            }
            d
        })
        .collect();
    Some(AffineSpace { point, directions })
}

/// The unique solution, if there is exactly one.
pub fn solve_unique(n: usize, eqs: &[Equation]) -> Option<Vec<Q>> {
    solve(n, eqs).filter(|s| s.directions.is_empty()).map(|s| s.point)
}

fn in_unit_box(x: &[Q]) -> bool {
    x.iter().all(|v| !v.is_negative() && *v <= Q::one())
}

/// Largest number of bound subsets [`vertices_in_unit_box`] will try.
pub const VERTEX_SEARCH_LIMIT: u128 = 2_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Vertices of `{x : eqs, 0 <= x_i <= 1}`, sorted. A vertex is a feasible
/// point where the equations plus some tight bounds pin down every
/// coordinate. `None` if the search would exceed [`VERTEX_SEARCH_LIMIT`].
pub fn vertices_in_unit_box(n: usize, eqs: &[Equation]) -> Option<Vec<Vec<Q>>> {
    let Some(space) = solve(n, eqs) else {
        return Some(Vec::new());
    };
    let d = space.directions.len();
    if d == 0 {
        return Some(if in_unit_box(&space.point) { vec![space.point] } else { Vec::new() });
    }
    let bounds: Vec<(usize, Q)> = (0..n).flat_map(|i| [(i, Q::zero()), (i, Q::one())]).collect();
    if binomial(bounds.len(), d) > VERTEX_SEARCH_LIMIT {
        return None;
    }
    let mut found: Vec<Vec<Q>> = Vec::new();
    let mut chosen = Vec::with_capacity(d);
    choose(&bounds, d, 0, &mut chosen, &mut |pick: &[usize]| {
        // Restrict to the affine space: solve for the parameters t.
        let sys: Vec<Equation> = pick
            .iter()
            .map(|&b| {
                let (i, ref v) = bounds[b];
                Equation {
                    coeffs: space.directions.iter().map(|dir| dir[i].clone()).collect(),
                    rhs: v - &space.point[i],
                }
            })
            .collect();
        if let Some(t) = solve_unique(d, &sys) {
            let x: Vec<Q> = (0..n)
                .map(|i| {
                    space.directions.iter().zip(&t).fold(space.point[i].clone(), |acc, (dir, tj)| acc + &dir[i] * tj)
                })
                .collect();
            if in_unit_box(&x) && !found.contains(&x) {
                found.push(x);
            }
        }
    });
    found.sort();
    Some(found)
}

fn choose(items: &[(usize, Q)], k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    for i in start..items.len() {
        if items.len() - i < k - chosen.len() {
            return;
        }
        // Both bounds of one coordinate are never tight together.
        if chosen.last().is_some_and(|&last| items[last].0 == items[i].0) {
            continue;
        }
        chosen.push(i);
        choose(items, k, i + 1, chosen, f);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(p: i64, d: i64) -> Q {
        Q::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn solves_small_system() {
        let eqs = vec![
            Equation { coeffs: vec![q(1, 1), q(1, 1)], rhs: q(3, 1) },
            Equation { coeffs: vec![q(1, 1), q(-1, 1)], rhs: q(1, 1) },
        ];
        assert_eq!(solve_unique(2, &eqs), Some(vec![q(2, 1), q(1, 1)]));
    }

    #[test]
    fn detects_inconsistency() {
        let eqs =
            vec![Equation { coeffs: vec![q(1, 1)], rhs: q(1, 1) }, Equation { coeffs: vec![q(2, 1)], rhs: q(3, 1) }];
        assert_eq!(solve(1, &eqs), None);
    }

    #[test]
    fn simplex_vertices() {
        // x + y + z = 1 in the unit cube.
        let eqs = vec![Equation { coeffs: vec![q(1, 1); 3], rhs: q(1, 1) }];
        let v = vertices_in_unit_box(3, &eqs).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.contains(&vec![q(0, 1), q(0, 1), q(1, 1)]));
    }

    #[test]
    fn square_vertices() {
        let v = vertices_in_unit_box(2, &[]).unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(rank(2, &[Equation::fix(2, 0, q(1, 2))]), 1);
    }
}
