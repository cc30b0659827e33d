//! Lattice polytopes, their normal fans, and Laurent polynomials.
//!
//! Normal fans use the MIN convention: the cone of a face `F` is the set of
//! weights `w` for which `<w, .>` attains its minimum over the polytope
//! exactly on `F`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{any_combination, Fan};
use crate::linalg::lp::nonnegative_solution;
use crate::linalg::{rank_of_vectors, rat, IntVector, Rational, RationalMatrix};

/// The vertices of the convex hull of `points`, sorted lexicographically.
/// A point is a vertex iff it is not a convex combination of the others.
pub fn convex_hull_vertices(points: &[IntVector]) -> Result<Vec<IntVector>> {
    let first = points.first().ok_or(Error::EmptyInput("point list"))?;
    let r = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != r) {
        return Err(Error::DimensionMismatch {
            expected: r,
            got: p.len(),
        });
    }
    let distinct: Vec<IntVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let vertices = distinct
        .iter()
        .enumerate()
        .filter(|&(i, p)| {
            let others: Vec<&IntVector> = distinct
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q)
                .collect();
            !in_convex_hull(&others, p)
        })
        .map(|(_, p)| p.clone())
        .collect();
    Ok(vertices)
}

fn in_convex_hull(points: &[&IntVector], p: &IntVector) -> bool {
    if points.is_empty() {
        return false;
    }
    let r = p.len();
    let mut triplets = Vec::new();
    for (j, q) in points.iter().enumerate() {
        for (i, x) in q.entries().iter().enumerate() {
            if !x.is_zero() {
                triplets.push((i, j, Rational::from_integer(x.clone())));
            }
        }
        triplets.push((r, j, Rational::one()));
    }
    let a = RationalMatrix::from_triplets(r + 1, points.len(), triplets);
    let mut b = p.to_rational();
    b.push(Rational::one());
    nonnegative_solution(&a, &b).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_rank: usize,
    points: Vec<IntVector>,
    vertices: Vec<IntVector>,
    dimension: usize,
}

impl LatticePolytope {
    pub fn new(points: Vec<IntVector>) -> Result<Self> {
        let vertices = convex_hull_vertices(&points)?;
        let ambient_rank = points[0].len();
        let diffs: Vec<IntVector> = vertices.iter().skip(1).map(|v| v.sub(&vertices[0])).collect();
        let dimension = rank_of_vectors(&diffs.iter().collect::<Vec<_>>(), ambient_rank);
        Ok(LatticePolytope {
            ambient_rank,
            points,
            vertices,
            dimension,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Basis of the orthogonal complement of the affine span's direction.
    fn orthogonal_complement(&self) -> Vec<IntVector> {
        let r = self.ambient_rank;
        let diffs: Vec<IntVector> = self.vertices.iter().skip(1).map(|v| v.sub(&self.vertices[0])).collect();
        let null = if diffs.is_empty() {
            (0..r).map(|i| IntVector::unit(r, i).to_rational()).collect()
        } else {
            RationalMatrix::from_int_rows(diffs.iter().map(|d| d.entries()), r).nullspace()
        };
        null.iter()
            .map(|n| IntVector::primitive_from_rational(n).expect("nonzero basis vector"))
            .collect()
    }

    /// Facets as (primitive inner normal inside the direction space, vertex
    /// indices on the facet), in order of first discovery.
    fn facets(&self, lineality: &[IntVector]) -> Vec<(IntVector, Vec<usize>)> {
        let d = self.dimension;
        let r = self.ambient_rank;
        let mut out: Vec<(IntVector, Vec<usize>)> = Vec::new();
        if d == 0 {
            return out;
        }
        let verts = &self.vertices;
        any_combination(verts.len(), d, |subset| {
            let base = &verts[subset[0]];
            let mut rows: Vec<IntVector> = subset[1..].iter().map(|&i| verts[i].sub(base)).collect();
            if rank_of_vectors(&rows.iter().collect::<Vec<_>>(), r) != d - 1 {
                return false;
            }
            rows.extend(lineality.iter().cloned());
            let null = if rows.is_empty() {
                (0..r).map(|i| IntVector::unit(r, i).to_rational()).collect()
            } else {
                RationalMatrix::from_int_rows(rows.iter().map(|v| v.entries()), r).nullspace()
            };
            let h = IntVector::primitive_from_rational(&null[0]).expect("nonzero normal");
            let vals: Vec<_> = verts.iter().map(|v| v.sub(base).dot(&h)).collect();
            let (pos, neg) = (
                vals.iter().any(Signed::is_positive),
                vals.iter().any(Signed::is_negative),
            );
            if pos && neg {
                return false;
            }
            let h = if neg { h.neg() } else { h };
            let on: Vec<usize> = (0..verts.len()).filter(|&i| vals[i].is_zero()).collect();
            if !out.iter().any(|(_, f)| f == &on) {
                out.push((h, on));
            }
            false
        });
        out
    }

    fn affine_dim(&self, idx: &[usize]) -> usize {
        if idx.is_empty() {
            return 0;
        }
        let base = &self.vertices[idx[0]];
        let diffs: Vec<IntVector> = idx[1..].iter().map(|&i| self.vertices[i].sub(base)).collect();
        rank_of_vectors(&diffs.iter().collect::<Vec<_>>(), self.ambient_rank)
    }
}

/// The normal fan under the MIN convention. Rays are the primitive inner
/// facet normals chosen inside the direction space of the polytope; the
/// lineality space is its orthogonal complement.
pub fn normal_fan(p: &LatticePolytope) -> Fan {
    let r = p.ambient_rank;
    let lineality = p.orthogonal_complement();
    let facets = p.facets(&lineality);
    let n = p.vertices.len();
    let all: Vec<usize> = (0..n).collect();
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    faces.insert(all.clone());
    let mut frontier: Vec<Vec<usize>> = facets.iter().map(|(_, f)| f.clone()).collect();
    while let Some(face) = frontier.pop() {
        if face.is_empty() || !faces.insert(face.clone()) {
            continue;
        }
        for (_, f) in &facets {
            let meet: Vec<usize> = face.iter().copied().filter(|i| f.contains(i)).collect();
            if !faces.contains(&meet) {
                frontier.push(meet);
            }
        }
    }
    let faces: Vec<Vec<usize>> = faces.into_iter().collect();
    let dims: Vec<usize> = faces.iter().map(|f| p.affine_dim(f)).collect();
    let cones: Vec<Vec<usize>> = faces
        .iter()
        .map(|face| {
            (0..facets.len())
                .filter(|&k| face.iter().all(|i| facets[k].1.contains(i)))
                .collect()
        })
        .collect();
    let mut relation = Vec::new();
    for (a, fa) in faces.iter().enumerate() {
        for (b, fb) in faces.iter().enumerate() {
            if dims[a] + 1 == dims[b] && fa.iter().all(|i| fb.contains(i)) {
                // larger face, smaller normal cone
                relation.push((b, a));
            }
        }
    }
    let rays = facets.into_iter().map(|(h, _)| h).collect();
    Fan::new(r, lineality, rays, cones, relation).expect("normal fan is well formed")
}

/// A Laurent polynomial with rational coefficients, terms sorted by
/// exponent in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: Vec<(IntVector, Rational)>,
}

impl LaurentPolynomial {
    /// Collects like terms and drops zero coefficients; the result must
    /// still have a term.
    pub fn new(nvars: usize, terms: Vec<(IntVector, Rational)>) -> Result<Self> {
        let mut merged: BTreeMap<IntVector, Rational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            *merged.entry(e).or_insert_with(Rational::zero) += c;
        }
        let terms: Vec<(IntVector, Rational)> = merged.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return Err(Error::InvalidPolynomial("the zero polynomial".into()));
        }
        Ok(LaurentPolynomial { nvars, terms })
    }

    pub fn from_i64_terms(nvars: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::new(nvars, terms.iter().map(|(e, c)| (IntVector::from_i64(e), rat(*c))).collect())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(IntVector, Rational)] {
        &self.terms
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn exponents(&self) -> Vec<IntVector> {
        self.terms.iter().map(|(e, _)| e.clone()).collect()
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mon: Vec<String> = e
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| {
                    if x.is_one() {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            if mon.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mon.join("*"))?;
            } else {
                write!(f, "{a}*{}", mon.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Convex hull of the exponent vectors.
pub fn newton_polytope(f: &LaurentPolynomial) -> LatticePolytope {
    LatticePolytope::new(f.exponents()).expect("a polynomial has at least one term")
}

/// `{ "ambient_rank": r, "points": [[...], ...] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeJson {
    pub ambient_rank: usize,
    pub points: Vec<IntVector>,
}

impl PolytopeJson {
    pub fn into_polytope(self) -> Result<LatticePolytope> {
        if let Some(p) = self.points.iter().find(|p| p.len() != self.ambient_rank) {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                got: p.len(),
            });
        }
        LatticePolytope::new(self.points)
    }
}

impl From<&LatticePolytope> for PolytopeJson {
    fn from(p: &LatticePolytope) -> Self {
        PolytopeJson {
            ambient_rank: p.ambient_rank,
            points: p.points.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{is_complete, validate_fan, ValidationLevel};
    use proptest::prelude::*;

    fn pts(xs: &[&[i64]]) -> Vec<IntVector> {
        xs.iter().map(|x| IntVector::from_i64(x)).collect()
    }

    #[test]
    fn hull_examples() {
        let square = pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1]]);
        assert_eq!(
            convex_hull_vertices(&square).unwrap(),
            pts(&[&[0, 0], &[0, 2], &[2, 0], &[2, 2]])
        );
        assert_eq!(convex_hull_vertices(&pts(&[&[3], &[0]])).unwrap(), pts(&[&[0], &[3]]));
        assert_eq!(
            convex_hull_vertices(&pts(&[&[0, 0], &[1, 0], &[2, 0]])).unwrap(),
            pts(&[&[0, 0], &[2, 0]])
        );
        assert!(convex_hull_vertices(&pts(&[&[0, 0], &[1]])).is_err());
        assert!(convex_hull_vertices(&[]).is_err());
    }

    /// Brute force: for each listed weight, the set of vertices where the
    /// weight is minimized.
    fn minimizers(p: &LatticePolytope, w: &IntVector) -> Vec<IntVector> {
        let vals: Vec<_> = p.vertices().iter().map(|v| v.dot(w)).collect();
        let m = vals.iter().min().unwrap().clone();
        p.vertices()
            .iter()
            .zip(&vals)
            .filter(|(_, x)| **x == m)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// The normal fan oracle: a ray h is a facet normal iff it minimizes
    /// on a facet; check every listed ray against this and count them.
    fn check_rays_against_oracle(p: &LatticePolytope, fan: &Fan) {
        for h in fan.rays() {
            let face = minimizers(p, h);
            assert_eq!(
                LatticePolytope::new(face).unwrap().dimension() + 1,
                p.dimension(),
                "ray {h} does not select a facet"
            );
        }
    }

    #[test]
    fn segment_fan() {
        let p = LatticePolytope::new(pts(&[&[0], &[1]])).unwrap();
        let f = normal_fan(&p);
        let mut rays = f.rays().to_vec();
        rays.sort();
        assert_eq!(rays, pts(&[&[-1], &[1]]));
        assert_eq!(f.cones().len(), 3);
    }

    #[test]
    fn triangle_fan_min_convention() {
        let p = LatticePolytope::new(pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let f = normal_fan(&p);
        let mut rays = f.rays().to_vec();
        rays.sort();
        assert_eq!(rays, pts(&[&[-1, -1], &[0, 1], &[1, 0]]));
        assert_eq!(f.maximal_cones().len(), 3);
        check_rays_against_oracle(&p, &f);
        // the weight (1,1) is minimized only at the origin vertex
        assert_eq!(minimizers(&p, &IntVector::from_i64(&[1, 1])), pts(&[&[0, 0]]));
        assert!(validate_fan(&f, ValidationLevel::Geometric).is_valid());
    }

    #[test]
    fn square_fan() {
        let p = LatticePolytope::new(pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let f = normal_fan(&p);
        let mut rays = f.rays().to_vec();
        rays.sort();
        assert_eq!(rays, pts(&[&[-1, 0], &[0, -1], &[0, 1], &[1, 0]]));
        assert_eq!(f.maximal_cones().len(), 4);
        check_rays_against_oracle(&p, &f);
        // each region of sign patterns minimizes at the expected corner
        for (w, v) in [([1, 1], [0, 0]), ([-1, 1], [1, 0]), ([1, -1], [0, 1]), ([-1, -1], [1, 1])] {
            assert_eq!(minimizers(&p, &IntVector::from_i64(&w)), pts(&[&v]));
        }
    }

    #[test]
    fn lower_dimensional_polytope_has_lineality() {
        let p = LatticePolytope::new(pts(&[&[0, 0, 0], &[1, 1, 0]])).unwrap();
        let f = normal_fan(&p);
        assert_eq!(f.lineality_dim(), 2);
        assert_eq!(f.rays().len(), 2);
        assert!(validate_fan(&f, ValidationLevel::Geometric).is_valid());
        assert!(is_complete(&f));
        let point = LatticePolytope::new(pts(&[&[2, 3]])).unwrap();
        let g = normal_fan(&point);
        assert_eq!(g.cones().len(), 1);
        assert!(is_complete(&g));
    }

    #[test]
    fn octahedron_fan_is_non_simplicial() {
        let p = LatticePolytope::new(pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]))
        .unwrap();
        let f = normal_fan(&p);
        assert_eq!(f.rays().len(), 8);
        assert_eq!(f.maximal_cones().len(), 6);
        assert!(f.maximal_cones().iter().all(|&i| f.cone(i).rays().len() == 4));
        assert!(validate_fan(&f, ValidationLevel::Geometric).is_valid());
        assert!(is_complete(&f));
    }

    #[test]
    fn polynomial_display() {
        let f = LaurentPolynomial::from_i64_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]).unwrap();
        assert_eq!(f.to_string(), "x1 + x2");
        let g = LaurentPolynomial::from_i64_terms(2, &[(&[0, 0], 1), (&[0, 1], -1), (&[2, -1], 2)]).unwrap();
        assert_eq!(g.to_string(), "2*x1^2*x2^-1 - x2 + 1");
        let h = LaurentPolynomial::new(1, vec![(IntVector::from_i64(&[0]), crate::linalg::rat_frac(-3, 2))]).unwrap();
        assert_eq!(h.to_string(), "-3/2");
        assert!(LaurentPolynomial::from_i64_terms(1, &[(&[1], 1), (&[1], -1)]).is_err());
    }

    #[test]
    fn newton_polytopes() {
        let f = LaurentPolynomial::from_i64_terms(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]).unwrap();
        assert_eq!(newton_polytope(&f).vertices().len(), 3);
        let g = LaurentPolynomial::from_i64_terms(1, &[(&[2], 1)]).unwrap();
        assert_eq!(newton_polytope(&g).vertices(), &pts(&[&[2]])[..]);
        let h = LaurentPolynomial::from_i64_terms(1, &[(&[1], 1), (&[3], 1)]).unwrap();
        assert_eq!(newton_polytope(&h).vertices(), &pts(&[&[1], &[3]])[..]);
    }

    #[test]
    fn polytope_json() {
        let raw: PolytopeJson = serde_json::from_str(r#"{"ambient_rank": 2, "points": [[0,0],[1,0],[0,1]]}"#).unwrap();
        let p = raw.into_polytope().unwrap();
        assert_eq!(p.dimension(), 2);
        let bad: PolytopeJson = serde_json::from_str(r#"{"ambient_rank": 3, "points": [[0,0]]}"#).unwrap();
        assert!(bad.into_polytope().is_err());
    }

    fn small_point_set() -> impl Strategy<Value = Vec<IntVector>> {
        (1usize..=3).prop_flat_map(|r| {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, r), 1..=7)
                .prop_map(|vs| vs.iter().map(|v| IntVector::from_i64(v)).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn hull_is_idempotent(points in small_point_set()) {
            let v = convex_hull_vertices(&points).unwrap();
            prop_assert_eq!(convex_hull_vertices(&v).unwrap(), v);
        }

        #[test]
        fn normal_fan_complete_with_one_cone_per_vertex(points in small_point_set()) {
            let p = LatticePolytope::new(points).unwrap();
            let f = normal_fan(&p);
            prop_assert_eq!(f.maximal_cones().len(), p.vertices().len());
            let r = p.ambient_rank();
            let grid: Vec<Vec<i64>> = (0..3i64.pow(r as u32))
                .map(|mut k| (0..r).map(|_| { let x = k % 3 - 1; k /= 3; x }).collect())
                .collect();
            for w in grid {
                let w: Vec<Rational> = w.into_iter().map(rat).collect();
                prop_assert!(f.support_contains(&w));
            }
        }
    }
}
