use std::collections::{BTreeSet, HashMap};

use super::chain::ChainComplex;
use super::poset::{order_complex, FacePoset};
use crate::error::{Error, Result};
use crate::linalg::{rat, RationalMatrix};

/// Abstract simplicial complex on vertices `0..vertex_count`, stored by its
/// facets. Each facet is a sorted vertex list; no facet contains another and
/// every vertex lies in some facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating list of simplices.
    pub fn new(vertex_count: usize, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());
        for mut s in simplices {
            s.sort_unstable();
            s.dedup();
            if let Some(&v) = s.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidBoundary(format!(
                    "vertex {v} out of range 0..{vertex_count}"
                )));
            }
            if !s.is_empty() {
                sets.push(s);
            }
        }
        // Largest first so containment only has to look backwards.
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            if !facets.iter().any(|f| f.len() > s.len() && is_subset(&s, f)) {
                facets.push(s);
            }
        }
        Ok(Self::from_maximal_faces(vertex_count, facets))
    }

    /// Trusted constructor: `facets` are sorted and pairwise non-nested.
    pub(crate) fn from_maximal_faces(vertex_count: usize, mut facets: Vec<Vec<usize>>) -> Self {
        let mut covered = vec![false; vertex_count];
        for f in &facets {
            for &v in f {
                covered[v] = true;
            }
        }
        for (v, c) in covered.into_iter().enumerate() {
            if !c {
                facets.push(vec![v]);
            }
        }
        facets.sort();
        SimplicialComplex {
            vertex_count,
            facets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension();
        self.facets.iter().all(|f| Some(f.len() - 1) == d)
    }

    /// All nonempty faces grouped by dimension, each group sorted.
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let Some(d) = self.dimension() else {
            return Vec::new();
        };
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); d + 1];
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                sets[face.len() - 1].insert(face);
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces().iter().map(Vec::len).collect()
    }

    /// Reduced Euler characteristic from face counts.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let s: i64 = self
            .f_vector()
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        s - 1
    }

    /// Augmented simplicial chain complex, boundary signs from the global
    /// vertex order.
    pub fn chain_complex(&self) -> ChainComplex {
        let faces = self.faces();
        let mut ranks = vec![1];
        ranks.extend(faces.iter().map(Vec::len));
        let mut boundaries = Vec::with_capacity(faces.len());
        if let Some(verts) = faces.first() {
            boundaries.push(RationalMatrix::from_triplets(
                1,
                verts.len(),
                (0..verts.len()).map(|j| (0, j, rat(1))),
            ));
        }
        for d in 1..faces.len() {
            let index: HashMap<&[usize], usize> = faces[d - 1]
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i))
                .collect();
            let mut trip = Vec::with_capacity(faces[d].len() * (d + 1));
            let mut buf = Vec::with_capacity(d);
            for (j, s) in faces[d].iter().enumerate() {
                for omit in 0..=d {
                    buf.clear();
                    buf.extend(s.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v));
                    let row = index[buf.as_slice()];
                    let sign = if omit % 2 == 0 { 1 } else { -1 };
                    trip.push((row, j, rat(sign)));
                }
            }
            boundaries.push(RationalMatrix::from_triplets(
                faces[d - 1].len(),
                faces[d].len(),
                trip,
            ));
        }
        ChainComplex::new(-1, ranks, boundaries).expect("shapes consistent by construction")
    }

    /// Poset of nonempty faces ordered by inclusion; element `i` is the
    /// `i`-th face in the order of [`SimplicialComplex::faces`] flattened.
    pub fn face_poset(&self) -> (FacePoset, Vec<Vec<usize>>) {
        let faces: Vec<Vec<usize>> = self.faces().into_iter().flatten().collect();
        let index: HashMap<&[usize], usize> =
            faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let mut covers = Vec::new();
        let mut buf = Vec::new();
        for (j, s) in faces.iter().enumerate() {
            if s.len() < 2 {
                continue;
            }
            for omit in 0..s.len() {
                buf.clear();
                buf.extend(s.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &v)| v));
                covers.push((index[buf.as_slice()], j));
            }
        }
        let dims = faces.iter().map(|f| f.len() - 1).collect();
        (FacePoset::from_covers_unchecked(dims, covers), faces)
    }

    /// Cone with a new apex vertex joined to every facet.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.vertex_count;
        let facets = if self.facets.is_empty() {
            vec![vec![apex]]
        } else {
            self.facets
                .iter()
                .map(|f| {
                    let mut g = f.clone();
                    g.push(apex);
                    g
                })
                .collect()
        };
        SimplicialComplex::from_maximal_faces(apex + 1, facets)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Order complex of the face poset.
pub fn barycentric_subdivision(c: &SimplicialComplex) -> SimplicialComplex {
    order_complex(&c.face_poset().0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::reduced_betti;

    fn tetra_boundary() -> SimplicialComplex {
        SimplicialComplex::new(
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn tetrahedron_boundary_is_sphere() {
        assert_eq!(reduced_betti(&tetra_boundary()).unwrap().betti, vec![0, 0, 1]);
    }

    #[test]
    fn isolated_points() {
        let c = SimplicialComplex::new(3, vec![]).unwrap();
        assert_eq!(c.facets().len(), 3);
        assert_eq!(reduced_betti(&c).unwrap().betti, vec![2]);
    }

    #[test]
    fn hexagon() {
        let c = SimplicialComplex::new(
            6,
            (0..6).map(|i| vec![i, (i + 1) % 6]).collect(),
        )
        .unwrap();
        assert_eq!(reduced_betti(&c).unwrap().betti, vec![0, 1]);
    }

    #[test]
    fn empty_complex_flags_degree_minus_one() {
        let c = SimplicialComplex::new(0, vec![]).unwrap();
        let b = reduced_betti(&c).unwrap();
        assert!(b.empty);
        assert!(b.betti.is_empty());
        assert_eq!(b.euler_characteristic(), c.reduced_euler_characteristic());
    }

    #[test]
    fn non_maximal_simplices_dropped() {
        let c = SimplicialComplex::new(3, vec![vec![0, 1], vec![0, 1, 2], vec![2]]).unwrap();
        assert_eq!(c.facets(), &[vec![0, 1, 2]]);
    }

    #[test]
    fn subdivision_examples() {
        let edge = SimplicialComplex::new(2, vec![vec![0, 1]]).unwrap();
        let sd = barycentric_subdivision(&edge);
        assert_eq!(sd.vertex_count(), 3);
        assert_eq!(sd.facets().len(), 2);

        let tri_boundary =
            SimplicialComplex::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let sd = barycentric_subdivision(&tri_boundary);
        assert_eq!(sd.f_vector(), vec![6, 6]);
        assert_eq!(reduced_betti(&sd).unwrap().betti, vec![0, 1]);

        let solid = SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap();
        let sd = barycentric_subdivision(&solid);
        assert_eq!(sd.facets().len(), 6);
        assert!(sd.facets().iter().all(|f| f.len() == 3));
    }

    #[test]
    fn cone_is_acyclic() {
        let b = reduced_betti(&tetra_boundary().cone()).unwrap();
        assert!(b.betti.iter().all(|&x| x == 0));
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        assert!(SimplicialComplex::new(2, vec![vec![0, 2]]).is_err());
    }
}
