//! Exact geometry of a single cone `pos(rays) + span(lineality)`.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::linalg::fm::LinearSystem;
use crate::linalg::{rat, IntVector, Rational, RationalMatrix};

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `true`; reports whether it did.
pub(crate) fn any_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// A supporting hyperplane cutting out a facet: `normal · x >= 0` on the
/// cone, with equality exactly on the rays listed in `zero_rays`.
#[derive(Clone, Debug)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub zero_rays: Vec<usize>,
}

/// Inequality description: `x` lies in the cone iff `e · x = 0` for every
/// equation and `f.normal · x >= 0` for every facet.
#[derive(Clone, Debug)]
pub struct Halfspaces {
    pub equations: Vec<Vec<Rational>>,
    pub facets: Vec<Facet>,
}

impl Halfspaces {
    /// Linear forms `a` such that the complement of the cone is the union
    /// of the open halfspaces `a · x < 0`.
    pub fn complement_forms(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::new();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x).collect());
        }
        for f in &self.facets {
            out.push(f.normal.clone());
        }
        out
    }

    pub fn contains(&self, w: &[Rational]) -> bool {
        self.equations.iter().all(|e| dot(e, w).is_zero())
            && self.facets.iter().all(|f| !dot(&f.normal, w).is_negative())
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn dot_int(a: &[Rational], v: &IntVector) -> Rational {
    v.dot_rational(a)
}

#[derive(Clone, Debug)]
pub struct ConeGeometry<'a> {
    ambient: usize,
    rays: Vec<&'a IntVector>,
    lineality: Vec<&'a IntVector>,
}

impl<'a> ConeGeometry<'a> {
    /// `lineality` may be linearly dependent; an independent subset is kept.
    pub fn new(ambient: usize, rays: Vec<&'a IntVector>, lineality: &'a [IntVector]) -> Self {
        let mut basis: Vec<&IntVector> = Vec::new();
        for l in lineality {
            let mut trial = basis.clone();
            trial.push(l);
            if rank(&trial, ambient) == trial.len() {
                basis = trial;
            }
        }
        ConeGeometry {
            ambient,
            rays,
            lineality: basis,
        }
    }

    pub fn rays(&self) -> &[&'a IntVector] {
        &self.rays
    }

    /// Independent lineality generators.
    pub fn lineality_basis(&self) -> &[&'a IntVector] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn dim(&self) -> usize {
        rank(&self.generators(), self.ambient)
    }

    fn generators(&self) -> Vec<&'a IntVector> {
        self.rays.iter().chain(&self.lineality).copied().collect()
    }

    /// Membership by triangulation: `w` is in the cone iff it is a
    /// nonnegative combination of some linearly independent ray subset of
    /// full size, plus lineality.
    pub fn contains(&self, w: &[Rational]) -> bool {
        assert_eq!(w.len(), self.ambient);
        let d = self.dim();
        let l = self.lineality.len();
        let k = d - l;
        let mut with_w: Vec<Vec<Rational>> =
            self.generators().iter().map(|g| g.to_rational()).collect();
        with_w.push(w.to_vec());
        if RationalMatrix::from_rows(with_w, self.ambient).expect("lengths").rank() > d {
            return false;
        }
        any_combination(self.rays.len(), k, |subset| {
            let cols: Vec<&IntVector> = subset
                .iter()
                .map(|&i| self.rays[i])
                .chain(self.lineality.iter().copied())
                .collect();
            if rank(&cols, self.ambient) != d {
                return false;
            }
            let m = column_matrix(&cols, self.ambient);
            match m.solve(w) {
                Some(c) => c[..k].iter().all(|x| !x.is_negative()),
                None => false,
            }
        })
    }

    pub fn halfspaces(&self) -> Halfspaces {
        let gens = self.generators();
        let equations = if gens.is_empty() {
            identity_rows(self.ambient)
        } else {
            row_matrix(&gens, self.ambient).nullspace()
        };
        let d = self.dim();
        let l = self.lineality.len();
        let k = d - l;
        let mut facets: Vec<Facet> = Vec::new();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        if k == 0 {
            return Halfspaces { equations, facets };
        }
        any_combination(self.rays.len(), k - 1, |subset| {
            let mut rows: Vec<&IntVector> = subset.iter().map(|&i| self.rays[i]).collect();
            rows.extend(self.lineality.iter().copied());
            if rank(&rows, self.ambient) != k - 1 + l {
                return false;
            }
            let null = if rows.is_empty() {
                identity_rows(self.ambient)
            } else {
                row_matrix(&rows, self.ambient).nullspace()
            };
            let Some(n) = null
                .into_iter()
                .find(|n| self.rays.iter().any(|r| !dot_int(n, r).is_zero()))
            else {
                return false;
            };
            let vals: Vec<Rational> = self.rays.iter().map(|r| dot_int(&n, r)).collect();
            let has_pos = vals.iter().any(Signed::is_positive);
            let has_neg = vals.iter().any(Signed::is_negative);
            if has_pos && has_neg {
                return false;
            }
            let normal: Vec<Rational> = if has_neg {
                n.iter().map(|x| -x).collect()
            } else {
                n
            };
            let zero_rays: Vec<usize> = (0..vals.len()).filter(|&i| vals[i].is_zero()).collect();
            if seen.insert(zero_rays.clone()) {
                let normal = IntVector::primitive_from_rational(&normal)
                    .expect("nonzero normal")
                    .to_rational();
                facets.push(Facet { normal, zero_rays });
            }
            false
        });
        Halfspaces { equations, facets }
    }

    /// Ray index sets of all faces (the lineality face is the empty set).
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let hs = self.halfspaces();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert((0..self.rays.len()).collect());
        let mut frontier: Vec<Vec<usize>> = hs.facets.iter().map(|f| f.zero_rays.clone()).collect();
        while let Some(face) = frontier.pop() {
            if !all.insert(face.clone()) {
                continue;
            }
            for f in &hs.facets {
                let meet: Vec<usize> = face
                    .iter()
                    .copied()
                    .filter(|i| f.zero_rays.binary_search(i).is_ok())
                    .collect();
                if !all.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        all.into_iter().collect()
    }

    /// Rays that are nonnegative combinations of the others plus lineality.
    pub fn redundant_rays(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&i| {
                let others: Vec<&IntVector> = self
                    .rays
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, r)| *r)
                    .collect();
                let sub = ConeGeometry {
                    ambient: self.ambient,
                    rays: others,
                    lineality: self.lineality.clone(),
                };
                sub.contains(&self.rays[i].to_rational())
            })
            .collect()
    }

    /// Some point of the relative interior: the sum of the rays.
    pub fn interior_point(&self) -> Vec<Rational> {
        let mut p = vec![Rational::zero(); self.ambient];
        for r in self.rays.iter().chain(&self.lineality) {
            for (x, y) in p.iter_mut().zip(r.entries()) {
                *x += Rational::from_integer(y.clone());
            }
        }
        p
    }
}

/// Do the relative interiors of two cones (sharing a lineality space)
/// meet? Decided by Fourier–Motzkin on
/// `Σ λ_i a_i - Σ μ_j b_j - Σ ν_k l_k = 0`, `λ, μ >= 1`.
pub fn relative_interiors_meet(a: &ConeGeometry<'_>, b: &ConeGeometry<'_>) -> bool {
    let r = a.ambient;
    let (na, nb, nl) = (a.rays.len(), b.rays.len(), a.lineality.len());
    let n = na + nb + nl;
    let mut sys = LinearSystem::new(n);
    for coord in 0..r {
        let mut row = vec![Rational::zero(); n];
        for (i, v) in a.rays.iter().enumerate() {
            row[i] = Rational::from_integer(v.entries()[coord].clone());
        }
        for (j, v) in b.rays.iter().enumerate() {
            row[na + j] = -Rational::from_integer(v.entries()[coord].clone());
        }
        for (k, v) in a.lineality.iter().enumerate() {
            row[na + nb + k] = -Rational::from_integer(v.entries()[coord].clone());
        }
        sys.add_eq(&row, &Rational::zero());
    }
    for i in 0..na + nb {
        sys.add_lower_bound(i, &rat(1));
    }
    sys.is_feasible()
}

/// Is the subcone spanned by `face_rays` (indices into `cone.rays()`) a
/// genuine face of `cone`? It is not iff some point of its relative
/// interior can be written using a positive amount of the other rays.
pub fn is_geometric_face(cone: &ConeGeometry<'_>, face_rays: &[usize]) -> bool {
    let r = cone.ambient;
    let nt = face_rays.len();
    let nr = cone.rays.len();
    let nl = cone.lineality.len();
    let n = nt + nr + nl;
    let mut sys = LinearSystem::new(n);
    for coord in 0..r {
        let mut row = vec![Rational::zero(); n];
        for (i, &t) in face_rays.iter().enumerate() {
            row[i] = Rational::from_integer(cone.rays[t].entries()[coord].clone());
        }
        for (j, v) in cone.rays.iter().enumerate() {
            row[nt + j] = -Rational::from_integer(v.entries()[coord].clone());
        }
        for (k, v) in cone.lineality.iter().enumerate() {
            row[nt + nr + k] = -Rational::from_integer(v.entries()[coord].clone());
        }
        sys.add_eq(&row, &Rational::zero());
    }
    for i in 0..nt {
        sys.add_lower_bound(i, &rat(1));
    }
    for j in 0..nr {
        sys.add_lower_bound(nt + j, &rat(0));
    }
    let mut outside = vec![Rational::zero(); n];
    for j in 0..nr {
        if !face_rays.contains(&j) {
            outside[nt + j] = rat(1);
        }
    }
    if outside.iter().all(Zero::is_zero) {
        return true;
    }
    sys.add_ge(&outside, &rat(1));
    !sys.is_feasible()
}

pub(crate) fn rank(vectors: &[&IntVector], ambient: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    row_matrix(vectors, ambient).rank()
}

fn row_matrix(vectors: &[&IntVector], ambient: usize) -> RationalMatrix {
    RationalMatrix::from_int_rows(vectors.iter().map(|v| v.entries()), ambient)
}

fn column_matrix(vectors: &[&IntVector], ambient: usize) -> RationalMatrix {
    row_matrix(vectors, ambient).transpose()
}

fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| rat((i == j) as i64)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    fn q(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| rat(a)).collect()
    }

    #[test]
    fn combinations_enumerated_in_order() {
        let mut seen = Vec::new();
        any_combination(4, 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut empty = 0;
        any_combination(3, 0, |_| {
            empty += 1;
            false
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn quadrant_membership() {
        let rays = [v(&[1, 0]), v(&[0, 1])];
        let c = ConeGeometry::new(2, rays.iter().collect(), &[]);
        assert!(c.contains(&q(&[2, 3])));
        assert!(c.contains(&q(&[0, 0])));
        assert!(!c.contains(&q(&[-1, 3])));
        let hs = c.halfspaces();
        assert!(hs.equations.is_empty());
        assert_eq!(hs.facets.len(), 2);
        assert!(hs.contains(&q(&[2, 3])));
        assert!(!hs.contains(&q(&[-1, 3])));
        assert_eq!(c.faces().len(), 4);
    }

    #[test]
    fn square_cone_faces() {
        // cone over a square: 4 rays in R^3, non-simplicial
        let rays = [v(&[1, 1, 1]), v(&[1, -1, 1]), v(&[-1, -1, 1]), v(&[-1, 1, 1])];
        let c = ConeGeometry::new(3, rays.iter().collect(), &[]);
        assert_eq!(c.dim(), 3);
        assert_eq!(c.halfspaces().facets.len(), 4);
        // apex, 4 rays, 4 two-dim faces, the cone
        assert_eq!(c.faces().len(), 10);
        assert!(c.contains(&q(&[0, 0, 1])));
        assert!(!c.contains(&q(&[2, 0, 1])));
        assert!(c.redundant_rays().is_empty());
        assert!(is_geometric_face(&c, &[0, 1]));
        assert!(!is_geometric_face(&c, &[0, 2]));
    }

    #[test]
    fn lineality_handled() {
        let lin = [v(&[1, 1])];
        let rays = [v(&[1, 0])];
        let c = ConeGeometry::new(2, rays.iter().collect(), &lin);
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&q(&[5, -1])));
        assert!(!c.contains(&q(&[-1, 5])));
        let hs = c.halfspaces();
        assert_eq!(hs.facets.len(), 1);
        assert!(hs.contains(&q(&[5, -1])));
        assert!(!hs.contains(&q(&[-1, 5])));
    }

    #[test]
    fn redundant_ray_detected() {
        let rays = [v(&[1, 0]), v(&[1, 1]), v(&[0, 1])];
        let c = ConeGeometry::new(2, rays.iter().collect(), &[]);
        assert_eq!(c.redundant_rays(), vec![1]);
    }

    #[test]
    fn interiors_meet() {
        let r1 = [v(&[1, 0]), v(&[0, 1])];
        let r2 = [v(&[1, 0]), v(&[1, 1])];
        let r3 = [v(&[0, -1]), v(&[-1, 0])];
        let a = ConeGeometry::new(2, r1.iter().collect(), &[]);
        let b = ConeGeometry::new(2, r2.iter().collect(), &[]);
        let c = ConeGeometry::new(2, r3.iter().collect(), &[]);
        assert!(relative_interiors_meet(&a, &b));
        assert!(!relative_interiors_meet(&a, &c));
    }
}
