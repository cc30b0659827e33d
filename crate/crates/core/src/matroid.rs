//! Matroids given by their bases, lattices of flats, the Möbius function,
//! and Bergman fans built from flag chains of flats.
//!
//! Ground sets are `0..n` in the Rust API; the JSON format is 1-based.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::complex::FacePoset;
use crate::error::{Error, Result};
use crate::fan::{any_combination, Fan};
use crate::linalg::{IntVector, Rational, RationalMatrix};

/// Largest ground set supported by the bitmask representation.
pub const MAX_GROUND_SIZE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ExplicitBases,
    Graphic,
    Linear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<u64>,
    provenance: Provenance,
}

fn mask_of(elements: &[usize]) -> u64 {
    elements.iter().fold(0, |m, &e| m | 1 << e)
}

fn elements_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Matroid {
    fn from_masks(n: usize, mut bases: Vec<u64>, provenance: Provenance) -> Result<Self> {
        if n > MAX_GROUND_SIZE {
            return Err(Error::InvalidMatroid(format!("ground set of size {n} is too large")));
        }
        bases.sort_unstable();
        bases.dedup();
        let first = *bases.first().ok_or_else(|| Error::InvalidMatroid("no bases".into()))?;
        let rank = first.count_ones() as usize;
        if let Some(b) = bases.iter().find(|b| b.count_ones() as usize != rank) {
            return Err(Error::InvalidMatroid(format!(
                "bases {:?} and {:?} have different sizes",
                elements_of(first),
                elements_of(*b)
            )));
        }
        if let Some(b) = bases.iter().find(|&&b| b & !full_mask(n) != 0) {
            return Err(Error::InvalidMatroid(format!(
                "basis {:?} leaves the ground set 0..{n}",
                elements_of(*b)
            )));
        }
        let m = Matroid {
            n,
            rank,
            bases,
            provenance,
        };
        m.check_exchange()?;
        Ok(m)
    }

    fn check_exchange(&self) -> Result<()> {
        let set: BTreeSet<u64> = self.bases.iter().copied().collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in elements_of(b1 & !b2) {
                    let ok = elements_of(b2 & !b1)
                        .into_iter()
                        .any(|y| set.contains(&((b1 & !(1 << x)) | 1 << y)));
                    if !ok {
                        return Err(Error::InvalidMatroid(format!(
                            "basis exchange fails for {:?} and {:?} at element {x}",
                            elements_of(b1),
                            elements_of(b2)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidMatroid(format!("rank {r} exceeds ground size {n}")));
        }
        let mut bases = Vec::new();
        any_combination(n, r, |s| {
            bases.push(mask_of(s));
            false
        });
        Self::from_masks(n, bases, Provenance::ExplicitBases)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| elements_of(b)).collect()
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        self.rank_mask(mask_of(set))
    }

    fn rank_mask(&self, s: u64) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    fn closure_mask(&self, s: u64) -> u64 {
        let r = self.rank_mask(s);
        (0..self.n)
            .filter(|&e| s >> e & 1 == 1 || self.rank_mask(s | 1 << e) == r)
            .fold(s, |m, e| m | 1 << e)
    }

    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        elements_of(self.closure_mask(mask_of(set)))
    }

    pub fn loops(&self) -> Vec<usize> {
        let union = self.bases.iter().fold(0, |m, b| m | b);
        (0..self.n).filter(|&e| union >> e & 1 == 0).collect()
    }

    pub fn coloops(&self) -> Vec<usize> {
        let meet = self.bases.iter().fold(full_mask(self.n), |m, b| m & b);
        elements_of(meet)
    }
}

/// Matroid from an explicit list of bases on `0..n`. The basis exchange
/// axiom is verified and a violating pair is named on failure.
pub fn matroid_from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Matroid> {
    for b in bases {
        if let Some(&e) = b.iter().find(|&&e| e >= n) {
            return Err(Error::InvalidMatroid(format!("element {e} is outside 0..{n}")));
        }
        let unique: BTreeSet<_> = b.iter().collect();
        if unique.len() != b.len() {
            return Err(Error::InvalidMatroid(format!("basis {b:?} repeats an element")));
        }
    }
    let masks = bases.iter().map(|b| mask_of(b)).collect();
    Matroid::from_masks(n, masks, Provenance::ExplicitBases)
}

/// Graphic matroid: the ground set is the edge list, bases are spanning
/// forests. Vertex labels are arbitrary.
pub fn matroid_from_graph(edges: &[(usize, usize)]) -> Result<Matroid> {
    let mut labels: BTreeMap<usize, usize> = BTreeMap::new();
    for &(u, v) in edges {
        let k = labels.len();
        labels.entry(u).or_insert(k);
        let k = labels.len();
        labels.entry(v).or_insert(k);
    }
    let edges: Vec<(usize, usize)> = edges.iter().map(|(u, v)| (labels[u], labels[v])).collect();
    let vertices = labels.len();
    let rank = vertices - components(vertices, &edges, full_mask(edges.len()));
    let mut bases = Vec::new();
    any_combination(edges.len(), rank, |s| {
        let m = mask_of(s);
        if components(vertices, &edges, m) == vertices - rank {
            bases.push(m);
        }
        false
    });
    Matroid::from_masks(edges.len(), bases, Provenance::Graphic)
}

/// Number of connected components of the subgraph on the edges in `mask`.
fn components(vertices: usize, edges: &[(usize, usize)], mask: u64) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut count = vertices;
    for (i, &(u, v)) in edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
    }
    count
}

/// Linear matroid of the columns of `m`.
pub fn matroid_from_matrix(m: &RationalMatrix) -> Result<Matroid> {
    let n = m.cols();
    let cols: Vec<Vec<Rational>> = m.transpose().to_dense();
    let r = m.rank();
    let mut bases = Vec::new();
    any_combination(n, r, |s| {
        let sub: Vec<Vec<Rational>> = s.iter().map(|&j| cols[j].clone()).collect();
        if RationalMatrix::from_rows(sub, m.rows()).expect("column lengths").rank() == r {
            bases.push(mask_of(s));
        }
        false
    });
    Matroid::from_masks(n, bases, Provenance::Linear)
}

/// Flats grouped by rank, with the covering relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatLattice {
    flats: Vec<u64>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
}

impl FlatLattice {
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, i: usize) -> Vec<usize> {
        elements_of(self.flats[i])
    }

    pub fn flats(&self) -> Vec<Vec<usize>> {
        self.flats.iter().map(|&f| elements_of(f)).collect()
    }

    pub fn rank_of_flat(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Number of flats of each rank.
    pub fn rank_counts(&self) -> Vec<usize> {
        let top = self.ranks.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0; top + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    /// The poset of flats other than bottom and top, graded by rank - 1.
    pub fn proper_part(&self) -> FacePoset {
        let (top, n) = (self.top(), self.flats.len());
        let dims = (1..top).map(|i| self.ranks[i] - 1).collect();
        let covers = self
            .covers
            .iter()
            .filter(|&&(a, b)| a != 0 && b != top && a < n)
            .map(|&(a, b)| (a - 1, b - 1))
            .collect();
        FacePoset::new(dims, covers).expect("flats are graded by rank")
    }
}

/// All flats, found by closing up from the bottom one element at a time.
pub fn flats_lattice(m: &Matroid) -> FlatLattice {
    let bottom = m.closure_mask(0);
    let mut found: BTreeSet<u64> = BTreeSet::from([bottom]);
    let mut pairs: BTreeSet<(u64, u64)> = BTreeSet::new();
    let mut frontier = vec![bottom];
    while let Some(f) = frontier.pop() {
        for e in 0..m.n {
            if f >> e & 1 == 0 {
                let g = m.closure_mask(f | 1 << e);
                pairs.insert((f, g));
                if found.insert(g) {
                    frontier.push(g);
                }
            }
        }
    }
    let mut flats: Vec<(usize, u64)> = found.into_iter().map(|f| (m.rank_mask(f), f)).collect();
    flats.sort_unstable();
    let index: HashMap<u64, usize> = flats.iter().enumerate().map(|(i, &(_, f))| (f, i)).collect();
    let covers = pairs.into_iter().map(|(a, b)| (index[&a], index[&b])).collect::<BTreeSet<_>>();
    FlatLattice {
        ranks: flats.iter().map(|&(r, _)| r).collect(),
        flats: flats.into_iter().map(|(_, f)| f).collect(),
        covers: covers.into_iter().collect(),
    }
}

/// `μ(0̂, 1̂)` via `μ(0̂,0̂) = 1`, `μ(0̂,x) = -Σ_{y<x} μ(0̂,y)`.
pub fn mobius_top(l: &FlatLattice) -> i64 {
    let n = l.flats.len();
    let mut mu = vec![0i64; n];
    for x in 0..n {
        if x == 0 {
            mu[x] = 1;
            continue;
        }
        let fx = l.flats[x];
        mu[x] = -(0..x)
            .filter(|&y| l.flats[y] & !fx == 0 && l.flats[y] != fx)
            .map(|y| mu[y])
            .sum::<i64>();
    }
    mu[n - 1]
}

/// The Bergman fan in `R^n`: lineality `(1,…,1)`, a ray `e_F` for every
/// proper nonempty flat `F` (in the lattice order), and a cone for every
/// chain of such flats.
pub fn bergman_fan(m: &Matroid) -> Result<Fan> {
    if let Some(&e) = m.loops().first() {
        return Err(Error::LoopNotAllowed(e));
    }
    let lattice = flats_lattice(m);
    let n = m.n;
    let proper: Vec<u64> = lattice.flats[1..lattice.flats.len() - 1].to_vec();
    let rays: Vec<IntVector> = proper
        .iter()
        .map(|&f| IntVector::from_i64(&(0..n).map(|i| (f >> i & 1) as i64).collect::<Vec<_>>()))
        .collect();
    let mut chains: Vec<Vec<usize>> = vec![Vec::new()];
    let mut k = 0;
    while k < chains.len() {
        let c = chains[k].clone();
        let start = c.last().map_or(0, |&l| l + 1);
        for j in start..proper.len() {
            let below = c.last().is_none_or(|&l| proper[l] & !proper[j] == 0 && proper[l] != proper[j]);
            if below {
                let mut next = c.clone();
                next.push(j);
                chains.push(next);
            }
        }
        k += 1;
    }
    let index: HashMap<Vec<usize>, usize> = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut faces = Vec::new();
    for (i, c) in chains.iter().enumerate() {
        for k in 0..c.len() {
            let mut sub = c.clone();
            sub.remove(k);
            faces.push((index[&sub], i));
        }
    }
    let lineality = vec![IntVector::from_i64(&vec![1; n])];
    Fan::new(n, lineality, rays, chains, faces)
}

/// `{ "n": n, "bases": [[...]] }`, `{ "graph": [[u,v],...] }` or
/// `{ "matrix": [[...]] }`, with 1-based elements in `bases`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum MatroidJson {
    Bases { n: usize, bases: Vec<Vec<usize>> },
    Graph { graph: Vec<(usize, usize)> },
    Matrix { matrix: Vec<Vec<serde_json::Value>> },
}

impl MatroidJson {
    pub fn into_matroid(self) -> Result<Matroid> {
        match self {
            MatroidJson::Bases { n, bases } => {
                let zero_based = bases
                    .iter()
                    .map(|b| {
                        b.iter()
                            .map(|&e| {
                                e.checked_sub(1)
                                    .ok_or_else(|| Error::InvalidMatroid("elements are numbered from 1".into()))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                matroid_from_bases(n, &zero_based)
            }
            MatroidJson::Graph { graph } => matroid_from_graph(&graph),
            MatroidJson::Matrix { matrix } => {
                let cols = matrix.first().map_or(0, Vec::len);
                let rows = matrix
                    .iter()
                    .map(|row| row.iter().map(parse_rational).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                let m = RationalMatrix::from_rows(rows, cols)
                    .map_err(|e| Error::InvalidMatroid(format!("matrix: {e}")))?;
                matroid_from_matrix(&m)
            }
        }
    }
}

/// A JSON integer, or a string `"p"` or `"p/q"`.
pub fn parse_rational(v: &serde_json::Value) -> Result<Rational> {
    let bad = || Error::InvalidMatroid(format!("{v} is not a rational number"));
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(crate::linalg::rat).ok_or_else(bad),
        serde_json::Value::String(s) => {
            let s = s.trim();
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        _ => Err(bad()),
    }
}

impl Matroid {
    pub fn from_json_str(s: &str) -> Result<Matroid> {
        let raw: MatroidJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidMatroid(format!("JSON: {e}")))?;
        raw.into_matroid()
    }

    /// The explicit-bases JSON form (1-based).
    pub fn to_json(&self) -> MatroidJson {
        MatroidJson::Bases {
            n: self.n,
            bases: self
                .bases
                .iter()
                .map(|&b| elements_of(b).into_iter().map(|e| e + 1).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{order_complex, reduced_betti, SimplicialComplex};
    use crate::fan::{validate_fan, ValidationLevel};

    fn k4() -> Matroid {
        matroid_from_graph(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn link_betti(m: &Matroid) -> Vec<usize> {
        let f = bergman_fan(m).unwrap();
        reduced_betti(&order_complex(&f.link_poset().unwrap())).unwrap().betti
    }

    #[test]
    fn constructions_of_u23() {
        let from_matrix = matroid_from_matrix(&RationalMatrix::from_i64_rows(&[vec![1, 0, 1], vec![0, 1, 1]])).unwrap();
        let from_graph = matroid_from_graph(&[(0, 1), (1, 2), (0, 2)]).unwrap();
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(from_matrix.bases(), u23.bases());
        assert_eq!(from_graph.bases(), u23.bases());
        assert_eq!(from_matrix.provenance(), Provenance::Linear);
        let boolean = matroid_from_bases(2, &[vec![0, 1]]).unwrap();
        assert_eq!(boolean.rank(), 2);
        assert_eq!(boolean.coloops(), vec![0, 1]);
    }

    #[test]
    fn exchange_failure_names_pair() {
        let err = matroid_from_bases(4, &[vec![0, 1], vec![2, 3]]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("[0, 1]") && msg.contains("[2, 3]"), "{msg}");
        assert!(matroid_from_bases(3, &[vec![0], vec![1, 2]]).is_err());
    }

    #[test]
    fn lattice_of_u23() {
        let l = flats_lattice(&Matroid::uniform(2, 3).unwrap());
        assert_eq!(l.flats(), vec![vec![], vec![0], vec![1], vec![2], vec![0, 1, 2]]);
        assert_eq!(l.covers().len(), 6);
        assert_eq!(mobius_top(&l), 2);
    }

    #[test]
    fn boolean_lattices() {
        let b2 = flats_lattice(&Matroid::uniform(2, 2).unwrap());
        assert_eq!(b2.rank_counts(), vec![1, 2, 1]);
        assert_eq!(mobius_top(&b2), 1);
        let b3 = flats_lattice(&Matroid::uniform(3, 3).unwrap());
        assert_eq!(mobius_top(&b3), -1);
    }

    /// Independent oracle: rank of an edge set from graph components, flats
    /// found by testing every subset.
    fn k4_flat_counts_brute_force() -> Vec<usize> {
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let rank = |mask: u64| 4 - components(4, &edges, mask);
        let mut counts = vec![0; 4];
        for s in 0u64..64 {
            let r = rank(s);
            let closed = (0..6).all(|e| s >> e & 1 == 1 || rank(s | 1 << e) > r);
            if closed {
                counts[r] += 1;
            }
        }
        counts
    }

    #[test]
    fn k4_flats() {
        let l = flats_lattice(&k4());
        assert_eq!(k4_flat_counts_brute_force(), vec![1, 6, 7, 1]);
        assert_eq!(l.rank_counts(), vec![1, 6, 7, 1]);
        // characteristic polynomial (t-1)(t-2)(t-3) has constant term -6
        assert_eq!(mobius_top(&l), -6);
    }

    #[test]
    fn bergman_examples() {
        assert_eq!(link_betti(&Matroid::uniform(2, 2).unwrap()), vec![1]);
        assert_eq!(link_betti(&Matroid::uniform(2, 3).unwrap()), vec![2]);
        let f = bergman_fan(&k4()).unwrap();
        assert_eq!(f.rays().len(), 13);
        assert_eq!(link_betti(&k4()), vec![0, 6]);
    }

    #[test]
    fn loops_rejected() {
        let m = matroid_from_bases(3, &[vec![0, 1]]).unwrap();
        assert_eq!(bergman_fan(&m).unwrap_err().to_string(), "loopless required: element 2 is a loop");
    }

    #[test]
    fn bergman_support_contains_flat_rays() {
        let f = bergman_fan(&Matroid::uniform(2, 3).unwrap()).unwrap();
        let w: Vec<Rational> = [1, 0, 0].iter().map(|&x| crate::linalg::rat(x)).collect();
        assert!(f.support_contains(&w));
        let w: Vec<Rational> = [1, 2, 0].iter().map(|&x| crate::linalg::rat(x)).collect();
        assert!(!f.support_contains(&w));
    }

    #[test]
    fn bergman_fans_validate() {
        for m in [Matroid::uniform(2, 4).unwrap(), Matroid::uniform(3, 4).unwrap(), k4()] {
            let f = bergman_fan(&m).unwrap();
            let r = validate_fan(&f, ValidationLevel::Geometric);
            assert!(r.is_valid(), "{:?}", r.violations);
            assert_eq!(r.pure_dimension, Some(m.rank()));
        }
    }

    #[test]
    fn crosscut_is_order_complex_of_proper_part() {
        for m in [Matroid::uniform(3, 5).unwrap(), k4()] {
            let f = bergman_fan(&m).unwrap();
            let crosscut = SimplicialComplex::new(
                f.rays().len(),
                f.cones().iter().map(|c| c.rays().to_vec()).filter(|c| !c.is_empty()).collect(),
            )
            .unwrap();
            let proper = order_complex(&flats_lattice(&m).proper_part());
            assert_eq!(crosscut, proper);
        }
    }

    #[test]
    fn json_forms() {
        let m = Matroid::from_json_str(r#"{"n": 2, "bases": [[1, 2]]}"#).unwrap();
        assert_eq!(m.bases(), vec![vec![0, 1]]);
        let g = Matroid::from_json_str(r#"{"graph": [[1,2],[2,3],[1,3]]}"#).unwrap();
        assert_eq!(g.rank(), 2);
        let l = Matroid::from_json_str(r#"{"matrix": [[1, 0, "1/2"], [0, 1, 1]]}"#).unwrap();
        assert_eq!(l.bases().len(), 3);
        assert!(Matroid::from_json_str(r#"{"n": 2, "bases": [[0, 1]]}"#).is_err());
        let back = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(back, r#"{"n":2,"bases":[[1,2]]}"#);
    }
}
