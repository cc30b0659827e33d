//! Rational polyhedral fans with an explicit lineality space.
//!
//! A [`Fan`] stores a global ray list, a lineality basis shared by every
//! cone, the cones as ray-index sets, and the face relation between cones.
//! Cones are kept in a canonical order (by dimension, then by sorted ray
//! list), so the minimal cone (the lineality space itself) is always at
//! index 0.

mod geometry;
mod json;
pub mod standard;
mod support;
mod validate;

use std::collections::{BTreeSet, HashMap};

use crate::complex::FacePoset;
use crate::error::{Error, Result};
use crate::linalg::{IntVector, Rational};

pub use geometry::{is_geometric_face, relative_interiors_meet, ConeGeometry, Facet, Halfspaces};
pub use json::{ConeJson, FanJson, LoadedFan};
pub use support::{is_complete, support_contained_in};
pub use validate::{validate_fan, ValidationLevel, ValidationReport, Violation, ViolationKind};

pub(crate) use geometry::any_combination;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    rays: Vec<usize>,
    dim: usize,
}

impl Cone {
    /// Indices into [`Fan::rays`], sorted.
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    /// Dimension including the lineality space.
    pub fn dim(&self) -> usize {
        self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    ambient_rank: usize,
    lineality: Vec<IntVector>,
    lineality_dim: usize,
    rays: Vec<IntVector>,
    cones: Vec<Cone>,
    faces: Vec<(usize, usize)>,
    index: HashMap<Vec<usize>, usize>,
}

impl Fan {
    /// Builds a fan from cones given as ray-index lists and a face relation
    /// given as `(child, parent)` pairs of cone indices. The minimal cone is
    /// added when missing and recorded as a face of every one-ray cone.
    ///
    /// Only structural problems (lengths, indices, duplicates) are errors
    /// here; everything else is left to [`validate_fan`].
    pub fn new(
        ambient_rank: usize,
        lineality: Vec<IntVector>,
        rays: Vec<IntVector>,
        cones: Vec<Vec<usize>>,
        faces: Vec<(usize, usize)>,
    ) -> Result<Fan> {
        Self::build(ambient_rank, lineality, rays, cones, faces).map(|(f, _)| f)
    }

    /// Like [`Fan::new`], also returning where each input cone ended up.
    pub fn build(
        ambient_rank: usize,
        lineality: Vec<IntVector>,
        rays: Vec<IntVector>,
        cones: Vec<Vec<usize>>,
        faces: Vec<(usize, usize)>,
    ) -> Result<(Fan, Vec<usize>)> {
        for v in lineality.iter().chain(&rays) {
            if v.len() != ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: ambient_rank,
                    got: v.len(),
                });
            }
        }
        let input_count = cones.len();
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(cones.len() + 1);
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        for (i, mut c) in cones.into_iter().enumerate() {
            c.sort_unstable();
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidFan(format!("cone {i} repeats a ray")));
            }
            if let Some(&r) = c.iter().find(|&&r| r >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {i} uses missing ray {r}")));
            }
            if let Some(j) = seen.insert(c.clone(), i) {
                return Err(Error::InvalidFan(format!("cones {j} and {i} have the same rays")));
            }
            sets.push(c);
        }
        for &(a, b) in &faces {
            if a >= input_count || b >= input_count {
                return Err(Error::InvalidFan(format!("face pair ({a},{b}) refers to a missing cone")));
            }
            if a == b {
                return Err(Error::InvalidFan(format!("cone {a} listed as its own face")));
            }
        }
        let mut faces = faces;
        let min = match seen.get(&Vec::new()) {
            Some(&m) => m,
            None => {
                sets.push(Vec::new());
                sets.len() - 1
            }
        };
        for (i, c) in sets.iter().enumerate() {
            if c.len() == 1 {
                faces.push((min, i));
            }
        }

        let lineality_dim = geometry::rank(&lineality.iter().collect::<Vec<_>>(), ambient_rank);
        let dims: Vec<usize> = sets
            .iter()
            .map(|c| {
                let gens: Vec<&IntVector> = c.iter().map(|&r| &rays[r]).chain(&lineality).collect();
                geometry::rank(&gens, ambient_rank)
            })
            .collect();
        let mut order: Vec<usize> = (0..sets.len()).collect();
        order.sort_by(|&a, &b| (dims[a], &sets[a]).cmp(&(dims[b], &sets[b])));
        let mut position = vec![0; sets.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let cones: Vec<Cone> = order
            .iter()
            .map(|&old| Cone {
                rays: sets[old].clone(),
                dim: dims[old],
            })
            .collect();
        let faces: BTreeSet<(usize, usize)> =
            faces.into_iter().map(|(a, b)| (position[a], position[b])).collect();
        let index = cones
            .iter()
            .enumerate()
            .map(|(i, c)| (c.rays.clone(), i))
            .collect();
        let fan = Fan {
            ambient_rank,
            lineality,
            lineality_dim,
            rays,
            cones,
            faces: faces.into_iter().collect(),
            index,
        };
        Ok((fan, position[..input_count].to_vec()))
    }

    /// Builds a fan from generating cones; all their faces are computed
    /// geometrically and added with the face relation.
    pub fn from_generators(
        ambient_rank: usize,
        lineality: Vec<IntVector>,
        rays: Vec<IntVector>,
        generators: Vec<Vec<usize>>,
    ) -> Result<(Fan, Vec<usize>)> {
        for v in lineality.iter().chain(&rays) {
            if v.len() != ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: ambient_rank,
                    got: v.len(),
                });
            }
        }
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut generator_ids = Vec::with_capacity(generators.len());
        let mut intern = |s: Vec<usize>, sets: &mut Vec<Vec<usize>>| -> usize {
            *ids.entry(s.clone()).or_insert_with(|| {
                sets.push(s);
                sets.len() - 1
            })
        };
        for (i, mut g) in generators.into_iter().enumerate() {
            g.sort_unstable();
            g.dedup();
            if let Some(&r) = g.iter().find(|&&r| r >= rays.len()) {
                return Err(Error::InvalidFan(format!("cone {i} uses missing ray {r}")));
            }
            let geom = ConeGeometry::new(ambient_rank, g.iter().map(|&r| &rays[r]).collect(), &lineality);
            let local_faces = geom.faces();
            let global: Vec<Vec<usize>> = local_faces
                .iter()
                .map(|f| f.iter().map(|&j| g[j]).collect())
                .collect();
            let dims: Vec<usize> = global
                .iter()
                .map(|f| {
                    let gens: Vec<&IntVector> = f.iter().map(|&r| &rays[r]).chain(&lineality).collect();
                    geometry::rank(&gens, ambient_rank)
                })
                .collect();
            let local_ids: Vec<usize> = global.iter().map(|f| intern(f.clone(), &mut sets)).collect();
            for a in 0..global.len() {
                for b in 0..global.len() {
                    if dims[a] + 1 == dims[b] && is_subset(&global[a], &global[b]) {
                        pairs.insert((local_ids[a], local_ids[b]));
                    }
                }
            }
            generator_ids.push(intern(g, &mut sets));
        }
        let (fan, position) = Fan::build(ambient_rank, lineality, rays, sets, pairs.into_iter().collect())?;
        let mapped = generator_ids.into_iter().map(|i| position[i]).collect();
        Ok((fan, mapped))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn lineality(&self) -> &[IntVector] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality_dim
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    /// `(child, parent)` pairs, sorted.
    pub fn face_relation(&self) -> &[(usize, usize)] {
        &self.faces
    }

    /// Index of the cone with exactly this (sorted) ray set.
    pub fn find_cone(&self, rays: &[usize]) -> Option<usize> {
        self.index.get(rays).copied()
    }

    pub fn cone_geometry(&self, i: usize) -> ConeGeometry<'_> {
        ConeGeometry::new(
            self.ambient_rank,
            self.cones[i].rays.iter().map(|&r| &self.rays[r]).collect(),
            &self.lineality,
        )
    }

    /// Cones that are not a declared face of another cone.
    pub fn maximal_cones(&self) -> Vec<usize> {
        let mut has_parent = vec![false; self.cones.len()];
        for &(a, _) in &self.faces {
            has_parent[a] = true;
        }
        (0..self.cones.len()).filter(|&i| !has_parent[i]).collect()
    }

    pub fn max_dim(&self) -> usize {
        self.cones.iter().map(|c| c.dim).max().unwrap_or(self.lineality_dim)
    }

    /// Common dimension of the maximal cones, if they all agree.
    pub fn pure_dimension(&self) -> Option<usize> {
        let dims: BTreeSet<usize> = self.maximal_cones().iter().map(|&i| self.cones[i].dim).collect();
        match dims.len() {
            1 => dims.into_iter().next(),
            _ => None,
        }
    }

    /// The subfan of cones of codimension at least `c` relative to the
    /// largest cone dimension. Unused rays are dropped.
    pub fn skeleton(&self, c: usize) -> Result<Fan> {
        let max = self.max_dim() - self.lineality_dim;
        if c > max {
            return Err(Error::CodimOutOfRange { codim: c, max });
        }
        let bound = self.max_dim() - c;
        let keep: Vec<usize> = (0..self.cones.len()).filter(|&i| self.cones[i].dim <= bound).collect();
        Ok(self.subfan(&keep))
    }

    /// The subfan on the given cones (assumed closed under faces).
    pub fn subfan(&self, keep: &[usize]) -> Fan {
        let mut cone_pos = vec![usize::MAX; self.cones.len()];
        for (k, &i) in keep.iter().enumerate() {
            cone_pos[i] = k;
        }
        let used: BTreeSet<usize> = keep.iter().flat_map(|&i| self.cones[i].rays.iter().copied()).collect();
        let mut ray_pos = vec![usize::MAX; self.rays.len()];
        for (k, &r) in used.iter().enumerate() {
            ray_pos[r] = k;
        }
        let rays = used.iter().map(|&r| self.rays[r].clone()).collect();
        let cones = keep
            .iter()
            .map(|&i| self.cones[i].rays.iter().map(|&r| ray_pos[r]).collect())
            .collect();
        let faces = self
            .faces
            .iter()
            .filter(|&&(a, b)| cone_pos[a] != usize::MAX && cone_pos[b] != usize::MAX)
            .map(|&(a, b)| (cone_pos[a], cone_pos[b]))
            .collect();
        Fan::new(self.ambient_rank, self.lineality.clone(), rays, cones, faces)
            .expect("subfan of a well-formed fan")
    }

    /// The link of the origin as a face poset: all cones except the minimal
    /// one, with cell dimension `dim - lineality_dim - 1`.
    pub fn link_poset(&self) -> Result<FacePoset> {
        self.link_poset_with_cones().map(|(p, _)| p)
    }

    /// [`Fan::link_poset`] together with the cone index of each element.
    pub fn link_poset_with_cones(&self) -> Result<(FacePoset, Vec<usize>)> {
        let cones: Vec<usize> = (1..self.cones.len()).collect();
        let mut dims = Vec::with_capacity(cones.len());
        for &i in &cones {
            let d = self.cones[i].dim;
            if d <= self.lineality_dim {
                return Err(Error::InvalidFan(format!(
                    "cone {i} has no dimension above the lineality space"
                )));
            }
            dims.push(d - self.lineality_dim - 1);
        }
        let relations = self
            .faces
            .iter()
            .filter(|&&(a, _)| a != 0)
            .map(|&(a, b)| (a - 1, b - 1))
            .collect();
        let poset = FacePoset::new(dims, relations)
            .map_err(|e| Error::InvalidFan(format!("face relation: {e}")))?;
        Ok((poset, cones))
    }

    /// True iff `w` lies in some cone.
    pub fn support_contains(&self, w: &[Rational]) -> bool {
        assert_eq!(w.len(), self.ambient_rank, "point has wrong length");
        let maximal = self.maximal_cones();
        if maximal.iter().any(|&i| self.cone_geometry(i).contains(w)) {
            return true;
        }
        let is_max: BTreeSet<usize> = maximal.into_iter().collect();
        (0..self.cones.len())
            .filter(|i| !is_max.contains(i))
            .any(|i| self.cone_geometry(i).contains(w))
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Free-function form of [`Fan::skeleton`].
pub fn skeleton(f: &Fan, c: usize) -> Result<Fan> {
    f.skeleton(c)
}

/// Free-function form of [`Fan::support_contains`].
pub fn support_contains(f: &Fan, w: &[Rational]) -> bool {
    f.support_contains(w)
}

/// Free-function form of [`Fan::link_poset`].
pub fn link_poset(f: &Fan) -> Result<FacePoset> {
    f.link_poset()
}

#[cfg(test)]
mod tests {
    use super::standard::{product_of_projective_spaces, projective_space};
    use super::*;
    use crate::complex::{order_complex, reduced_betti};
    use crate::linalg::rat;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from_i64(x)
    }

    fn q(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| rat(a)).collect()
    }

    fn betti(f: &Fan) -> Vec<usize> {
        reduced_betti(&order_complex(&f.link_poset().unwrap())).unwrap().betti
    }

    #[test]
    fn canonical_order_puts_minimal_cone_first() {
        let f = Fan::new(
            2,
            vec![],
            vec![v(&[0, 1]), v(&[1, 0])],
            vec![vec![1, 0], vec![1], vec![0]],
            vec![(1, 0), (2, 0)],
        )
        .unwrap();
        assert_eq!(f.cones().len(), 4);
        assert!(f.cone(0).rays().is_empty());
        assert_eq!(f.cone(1).rays(), &[0]);
        assert_eq!(f.cone(3).dim(), 2);
        assert_eq!(f.maximal_cones(), vec![3]);
        assert_eq!(f.pure_dimension(), Some(2));
    }

    #[test]
    fn structural_errors() {
        assert!(Fan::new(2, vec![], vec![v(&[1])], vec![], vec![]).is_err());
        assert!(Fan::new(2, vec![], vec![v(&[1, 0])], vec![vec![3]], vec![]).is_err());
        assert!(Fan::new(2, vec![], vec![v(&[1, 0])], vec![vec![0], vec![0]], vec![]).is_err());
    }

    #[test]
    fn skeleton_of_p2() {
        let p2 = projective_space(2);
        let s = p2.skeleton(1).unwrap();
        assert_eq!(s.cones().len(), 4);
        assert_eq!(s.rays().len(), 3);
        assert_eq!(p2.skeleton(0).unwrap(), p2);
        let p3 = projective_space(3);
        let origin = p3.skeleton(3).unwrap();
        assert_eq!(origin.cones().len(), 1);
        assert!(p3.skeleton(4).is_err());
    }

    #[test]
    fn skeleton_composition() {
        let p = projective_space(3);
        for c in 0..=3 {
            for d in 0..=3 - c {
                let twice = p.skeleton(c).unwrap().skeleton(d).unwrap();
                assert_eq!(twice, p.skeleton(c + d).unwrap());
            }
        }
    }

    #[test]
    fn link_of_p2_is_a_circle() {
        let p2 = projective_space(2);
        let poset = p2.link_poset().unwrap();
        assert_eq!(poset.len(), 6);
        assert_eq!(betti(&p2), vec![0, 1]);
    }

    #[test]
    fn link_of_three_rays() {
        let f = Fan::new(
            2,
            vec![],
            vec![v(&[1, 1]), v(&[-1, 0]), v(&[0, -1])],
            vec![vec![0], vec![1], vec![2]],
            vec![],
        )
        .unwrap();
        let p = f.link_poset().unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.covers().is_empty());
        assert_eq!(betti(&f), vec![2]);
    }

    #[test]
    fn lineality_only_fan_has_empty_link() {
        let f = Fan::new(2, vec![v(&[1, 0]), v(&[0, 1])], vec![], vec![vec![]], vec![]).unwrap();
        let p = f.link_poset().unwrap();
        assert!(p.is_empty());
        let b = reduced_betti(&order_complex(&p)).unwrap();
        assert!(b.empty);
    }

    #[test]
    fn single_ray_membership() {
        let f = Fan::new(2, vec![], vec![v(&[1, 0])], vec![vec![0]], vec![]).unwrap();
        assert!(f.support_contains(&q(&[2, 0])));
        assert!(!f.support_contains(&q(&[1, 1])));
        assert!(f.support_contains(&q(&[0, 0])));
    }

    #[test]
    fn complete_fans_contain_everything() {
        let f = product_of_projective_spaces(1, 1);
        for x in -2..=2 {
            for y in -2..=2 {
                assert!(f.support_contains(&q(&[x, y])));
            }
        }
    }

    #[test]
    fn skeleton_link_is_subposet() {
        let p = projective_space(3);
        let (full, full_cones) = p.link_poset_with_cones().unwrap();
        for c in 0..=2 {
            let s = p.skeleton(c).unwrap();
            let bound = p.max_dim() - p.lineality_dim() - c - 1;
            let (sub, _) = full.restrict(|i| full.dim(i) <= bound);
            let skel = s.link_poset().unwrap();
            assert_eq!(sub.len(), skel.len());
            assert_eq!(sub.dims(), skel.dims());
            assert_eq!(sub.covers(), skel.covers());
            assert!(full_cones.len() >= skel.len());
        }
    }

    #[test]
    fn generators_produce_faces() {
        // the fan of P^1 x P^1 from its four quadrants
        let rays = vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]), v(&[0, -1])];
        let (f, gens) = Fan::from_generators(
            2,
            vec![],
            rays,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap();
        assert_eq!(f.cones().len(), 9);
        assert_eq!(gens.len(), 4);
        assert!(gens.iter().all(|&g| f.cone(g).dim() == 2));
        assert_eq!(betti(&f), vec![0, 1]);
    }

    #[test]
    fn crosscut_matches_order_complex_for_simplicial_fans() {
        use crate::complex::SimplicialComplex;
        for f in [projective_space(2), projective_space(3), product_of_projective_spaces(1, 2)] {
            let crosscut = SimplicialComplex::new(
                f.rays().len(),
                f.cones().iter().map(|c| c.rays().to_vec()).filter(|r| !r.is_empty()).collect(),
            )
            .unwrap();
            assert_eq!(reduced_betti(&crosscut).unwrap().betti, betti(&f));
        }
    }
}
