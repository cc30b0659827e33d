use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::IntVector;
use crate::polytope::{newton_polytope, normal_fan, LaurentPolynomial};

/// The codimension-one skeleton of the normal fan of the Newton polytope:
/// where the minimum of the terms' weights is attained at least twice.
pub fn tropical_hypersurface_fan(f: &LaurentPolynomial) -> Result<Fan> {
    if f.is_monomial() {
        return Err(Error::MonomialHypersurface);
    }
    let fan = normal_fan(&newton_polytope(f));
    fan.skeleton(1)
}

/// The terms of `f` whose exponent minimizes `<w, u>`.
pub fn initial_form(f: &LaurentPolynomial, w: &IntVector) -> Result<LaurentPolynomial> {
    if w.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            got: w.len(),
        });
    }
    let weights: Vec<_> = f.terms().iter().map(|(u, _)| u.dot(w)).collect();
    let min = weights.iter().min().expect("at least one term").clone();
    let terms = f
        .terms()
        .iter()
        .zip(&weights)
        .filter(|(_, x)| **x == min)
        .map(|(t, _)| t.clone())
        .collect();
    LaurentPolynomial::new(f.nvars(), terms)
}

/// `w` is on the tropical hypersurface iff its initial form has at least
/// two terms.
pub fn in_tropical_hypersurface(f: &LaurentPolynomial, w: &IntVector) -> Result<bool> {
    Ok(!initial_form(f, w)?.is_monomial())
}
