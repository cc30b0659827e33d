//! Exact linear feasibility: phase-1 simplex with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::{Rational, RationalMatrix};

/// Finds some `x >= 0` with `A x = b`, or returns `None` if there is none.
pub fn nonnegative_solution(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m, "right-hand side length");
    let width = n + m + 1;
    let rhs = width - 1;

    let dense = a.to_dense();
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in dense.into_iter().enumerate() {
        let flip = b[i].is_negative();
        let mut t = vec![Rational::zero(); width];
        for (j, x) in row.into_iter().enumerate() {
            t[j] = if flip { -x } else { x };
        }
        t[n + i] = Rational::one();
        t[rhs] = if flip { -b[i].clone() } else { b[i].clone() };
        tab.push(t);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut obj = vec![Rational::zero(); width];
    for row in &tab {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[rhs] -= &row[rhs];
    }

    while let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &tab[i][rhs] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // Phase-1 objective is bounded below by zero.
        let (pr, _) = leave.expect("phase-1 problem is bounded");
        pivot(&mut tab, &mut obj, pr, enter);
        basis[pr] = enter;
    }

    if !obj[rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab[i][rhs].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<Rational>], obj: &mut [Rational], pr: usize, pc: usize) {
    let inv = tab[pr][pc].recip();
    for x in tab[pr].iter_mut() {
        *x *= &inv;
    }
    let prow = tab[pr].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i != pr && !row[pc].is_zero() {
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    if !obj[pc].is_zero() {
        let f = obj[pc].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}
