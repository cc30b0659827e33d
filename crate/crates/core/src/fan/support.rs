use num_traits::{Signed, Zero};

use super::geometry::ConeGeometry;
use super::Fan;
use crate::error::{Error, Result};
use crate::linalg::fm::LinearSystem;
use crate::linalg::{rat, IntVector, Rational};

/// Is `|f|` contained in `|g|`?
///
/// Every cone's interior sample point is tested first; then each maximal
/// cone of `f` is intersected with the complement of `|g|`, written as a
/// union of open halfspaces per cone of `g`, and each branch of the
/// resulting disjunction is shown empty by Fourier–Motzkin.
pub fn support_contained_in(f: &Fan, g: &Fan) -> Result<bool> {
    if f.ambient_rank() != g.ambient_rank() {
        return Err(Error::DimensionMismatch {
            expected: f.ambient_rank(),
            got: g.ambient_rank(),
        });
    }
    for i in 0..f.cones().len() {
        if !g.support_contains(&f.cone_geometry(i).interior_point()) {
            log::debug!("sample point of cone {i} lies outside");
            return Ok(false);
        }
    }
    let g_forms: Vec<Vec<Vec<Rational>>> = g
        .maximal_cones()
        .into_iter()
        .map(|j| g.cone_geometry(j).halfspaces().complement_forms())
        .collect();
    for i in f.maximal_cones() {
        let sigma = f.cone_geometry(i);
        if escapes(&sigma, &g_forms) {
            log::debug!("cone {i} is not covered");
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the whole space lies in `|f|`.
pub fn is_complete(f: &Fan) -> bool {
    let r = f.ambient_rank();
    let whole = super::standard::whole_space(r);
    support_contained_in(&whole, f).expect("same ambient rank")
}

/// Does `sigma` contain a point outside every cone whose complement is
/// described by `forms`?
fn escapes(sigma: &ConeGeometry<'_>, forms: &[Vec<Vec<Rational>>]) -> bool {
    let gens: Vec<&IntVector> = sigma.rays().to_vec();
    let lin: Vec<IntVector> = lineality_of(sigma);
    let nr = gens.len();
    let n = nr + lin.len();
    // For each cone of g, the forms that can be made negative on sigma,
    // expressed in the coordinates (lambda, nu) of sigma.
    let mut choices: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(forms.len());
    for cone_forms in forms {
        let mut usable = Vec::new();
        for a in cone_forms {
            let coeffs: Vec<Rational> = gens
                .iter()
                .map(|r| r.dot_rational(a))
                .chain(lin.iter().map(|l| l.dot_rational(a)))
                .collect();
            let can_go_negative = coeffs[..nr].iter().any(Signed::is_negative)
                || coeffs[nr..].iter().any(|c| !c.is_zero());
            if can_go_negative && !usable.contains(&coeffs) {
                usable.push(coeffs);
            }
        }
        if usable.is_empty() {
            return false;
        }
        choices.push(usable);
    }
    let mut sys = LinearSystem::new(n);
    for i in 0..nr {
        sys.add_lower_bound(i, &rat(0));
    }
    search(&sys, &choices, 0)
}

fn search(sys: &LinearSystem, choices: &[Vec<Vec<Rational>>], depth: usize) -> bool {
    if depth == choices.len() {
        return true;
    }
    for coeffs in &choices[depth] {
        let mut next = sys.clone();
        next.add_le(coeffs, &rat(-1));
        if next.is_feasible() && search(&next, choices, depth + 1) {
            return true;
        }
    }
    false
}

fn lineality_of(sigma: &ConeGeometry<'_>) -> Vec<IntVector> {
    sigma.lineality_basis().iter().map(|l| (*l).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::standard::{product_of_projective_spaces, projective_space, whole_space};

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    #[test]
    fn skeleton_inside_complete_fan() {
        let g = projective_space(2);
        let f = g.skeleton(1).unwrap();
        assert!(support_contained_in(&f, &g).unwrap());
        assert!(!support_contained_in(&g, &f).unwrap());
    }

    #[test]
    fn complete_fans_cover_each_other() {
        let p2 = projective_space(2);
        let p1p1 = product_of_projective_spaces(1, 1);
        assert!(support_contained_in(&p2, &p1p1).unwrap());
        assert!(support_contained_in(&p1p1, &p2).unwrap());
        assert!(is_complete(&p2));
        assert!(is_complete(&projective_space(3)));
        assert!(is_complete(&whole_space(2)));
        assert!(!is_complete(&p2.skeleton(1).unwrap()));
    }

    #[test]
    fn diagonal_ray_not_in_axes() {
        let f = Fan::new(2, vec![], vec![v(&[1, 1])], vec![vec![0]], vec![]).unwrap();
        let g = Fan::new(2, vec![], vec![v(&[1, 0]), v(&[0, 1])], vec![vec![0], vec![1]], vec![]).unwrap();
        assert!(!support_contained_in(&f, &g).unwrap());
    }

    #[test]
    fn gap_missed_by_sample_points() {
        // f is the closed upper half plane: one ray plus a lineality line
        let f = Fan::new(2, vec![v(&[1, 0])], vec![v(&[0, 1])], vec![vec![0]], vec![]).unwrap();
        let rays = vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0])];
        let (g, _) = Fan::from_generators(2, vec![], rays.clone(), vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert!(support_contained_in(&f, &g).unwrap());
        let rays = vec![v(&[1, 0]), v(&[1, 1]), v(&[0, 1]), v(&[-1, 0]), v(&[2, 1])];
        let (h, _) =
            Fan::from_generators(2, vec![], rays, vec![vec![0, 4], vec![1, 2], vec![2, 3]]).unwrap();
        // every sample point of f lies in h, the open sector between (2,1)
        // and (1,1) does not
        assert!(!support_contained_in(&f, &h).unwrap());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        assert!(support_contained_in(&whole_space(2), &whole_space(3)).is_err());
    }
}
