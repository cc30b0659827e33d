//! A few fans that show up everywhere: projective spaces, their products,
//! and the whole space as a single cone.

use super::Fan;
use crate::linalg::IntVector;

/// Proper subsets of `0..n` with their covering pairs.
fn proper_subsets(n: usize) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let full = (1usize << n) - 1;
    let masks: Vec<usize> = (0..full).collect();
    let cones = masks
        .iter()
        .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    let mut faces = Vec::new();
    for &m in &masks {
        for i in 0..n {
            if m >> i & 1 == 1 {
                faces.push((m & !(1 << i), m));
            }
        }
    }
    (cones, faces)
}

/// The fan of `P^r`: rays `e_1..e_r` and `-(e_1+..+e_r)`, every proper
/// subset spanning a cone.
pub fn projective_space(r: usize) -> Fan {
    assert!(r >= 1, "projective space needs r >= 1");
    let mut rays: Vec<IntVector> = (0..r).map(|i| IntVector::unit(r, i)).collect();
    rays.push(IntVector::from_i64(&vec![-1; r]));
    let (cones, faces) = proper_subsets(r + 1);
    Fan::new(r, vec![], rays, cones, faces).expect("projective space fan")
}

/// The fan of `P^a x P^b` in rank `a + b`.
pub fn product_of_projective_spaces(a: usize, b: usize) -> Fan {
    assert!(a >= 1 && b >= 1, "factors need positive dimension");
    let r = a + b;
    let mut rays = Vec::new();
    for i in 0..a {
        rays.push(IntVector::unit(r, i));
    }
    let mut last = vec![0i64; r];
    last[..a].iter_mut().for_each(|x| *x = -1);
    rays.push(IntVector::from_i64(&last));
    for i in 0..b {
        rays.push(IntVector::unit(r, a + i));
    }
    let mut last = vec![0i64; r];
    last[a..].iter_mut().for_each(|x| *x = -1);
    rays.push(IntVector::from_i64(&last));

    let (left, _) = proper_subsets(a + 1);
    let (right, _) = proper_subsets(b + 1);
    let mut cones = Vec::new();
    for s in &left {
        for t in &right {
            let mut c = s.clone();
            c.extend(t.iter().map(|&j| j + a + 1));
            cones.push(c);
        }
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        cones.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut faces = Vec::new();
    for (i, c) in cones.iter().enumerate() {
        for k in 0..c.len() {
            let mut f = c.clone();
            f.remove(k);
            faces.push((index[&f], i));
        }
    }
    Fan::new(r, vec![], rays, cones, faces).expect("product fan")
}

/// `R^r` as one cone made of lineality.
pub fn whole_space(r: usize) -> Fan {
    let lineality = (0..r).map(|i| IntVector::unit(r, i)).collect();
    Fan::new(r, lineality, vec![], vec![vec![]], vec![]).expect("whole space")
}
