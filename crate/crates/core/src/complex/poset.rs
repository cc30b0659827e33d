use std::collections::BTreeMap;

use super::chain::ChainComplex;
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{rat, RationalMatrix};

/// A finite poset of cells, graded by cell dimension.
///
/// Elements are `0..len()`. The order is stored as its covering relation
/// (`(lower, upper)` pairs); any generating set of relations is accepted at
/// construction and reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    dims: Vec<usize>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl FacePoset {
    pub fn new(dims: Vec<usize>, relations: Vec<(usize, usize)>) -> Result<Self> {
        let n = dims.len();
        for &(a, b) in &relations {
            if a >= n || b >= n {
                return Err(Error::InvalidPoset(format!(
                    "relation ({a},{b}) refers to a missing element"
                )));
            }
            if dims[a] >= dims[b] {
                return Err(Error::InvalidPoset(format!(
                    "cell dimension must increase along ({a},{b}): {} -> {}",
                    dims[a], dims[b]
                )));
            }
        }
        let covers = transitive_reduction(&dims, &relations);
        Ok(Self::from_covers_unchecked(dims, covers))
    }

    /// Builds a poset from relations already known to be covers.
    pub(crate) fn from_covers_unchecked(dims: Vec<usize>, mut covers: Vec<(usize, usize)>) -> Self {
        covers.sort_unstable();
        covers.dedup();
        let n = dims.len();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(a, b) in &covers {
            lower[b].push(a);
            upper[a].push(b);
        }
        FacePoset {
            dims,
            covers,
            lower,
            upper,
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    /// Every cover raises the cell dimension by exactly one and every
    /// minimal element is a vertex.
    pub fn is_graded(&self) -> bool {
        self.covers
            .iter()
            .all(|&(a, b)| self.dims[b] == self.dims[a] + 1)
            && self.minimal_elements().iter().all(|&i| self.dims[i] == 0)
    }

    /// Sub-poset on the elements satisfying `keep`, with the induced order.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> (FacePoset, Vec<usize>) {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        let reach = self.reachability();
        let mut rel = Vec::new();
        for (ka, &a) in kept.iter().enumerate() {
            for (kb, &b) in kept.iter().enumerate() {
                if a != b && reach[a][b] {
                    rel.push((ka, kb));
                }
            }
        }
        let dims = kept.iter().map(|&i| self.dims[i]).collect();
        let poset = FacePoset::new(dims, rel).expect("induced order of a valid poset");
        (poset, kept)
    }

    /// `reach[a][b]` iff `a < b`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.dims[i]));
        let mut reach = vec![vec![false; n]; n];
        for &a in &order {
            for &b in &self.upper[a] {
                reach[a][b] = true;
                let row_b = reach[b].clone();
                for (x, &y) in reach[a].iter_mut().zip(&row_b) {
                    *x |= y;
                }
            }
        }
        reach
    }

    /// All maximal chains, each listed bottom to top.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for m in self.minimal_elements() {
            stack.push(m);
            self.extend_chains(&mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let top = *stack.last().expect("nonempty chain");
        if self.upper[top].is_empty() {
            out.push(stack.clone());
            return;
        }
        for &u in &self.upper[top] {
            stack.push(u);
            self.extend_chains(stack, out);
            stack.pop();
        }
    }

    /// Number of maximal chains, without materializing them.
    pub fn count_maximal_chains(&self) -> u128 {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.dims[i]));
        let mut up = vec![0u128; n];
        for &a in &order {
            up[a] = if self.upper[a].is_empty() {
                1
            } else {
                self.upper[a].iter().map(|&b| up[b]).sum()
            };
        }
        self.minimal_elements().iter().map(|&m| up[m]).sum()
    }

    /// Cellular chain complex of the regular CW complex whose face poset
    /// this is, augmented in degree -1.
    ///
    /// Incidence numbers are fixed cell by cell: the first facet of a cell
    /// gets `+1` and the sign propagates across codimension-two faces, each
    /// of which lies in exactly two facets of a regular cell. Fails if the
    /// poset is not graded or violates that diamond property.
    pub fn cellular_chain_complex(&self) -> Result<ChainComplex> {
        if !self.is_graded() {
            return Err(Error::InvalidPoset(
                "cellular homology needs a graded poset with vertices at the bottom".into(),
            ));
        }
        let top = match self.max_dim() {
            None => {
                return ChainComplex::new(-1, vec![1], vec![]);
            }
            Some(d) => d,
        };
        let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        let mut pos = vec![0usize; self.len()];
        for i in 0..self.len() {
            pos[i] = by_dim[self.dims[i]].len();
            by_dim[self.dims[i]].push(i);
        }
        // Signed boundary of each cell; vertices have boundary {empty: +1},
        // encoded with the sentinel usize::MAX.
        const EMPTY: usize = usize::MAX;
        let mut signs: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.len()];
        for &v in &by_dim[0] {
            signs[v] = vec![(EMPTY, 1)];
        }
        for d in 1..=top {
            for &e in &by_dim[d] {
                signs[e] = self.incidence_signs(e, &signs)?;
            }
        }
        let mut ranks = vec![1];
        ranks.extend(by_dim.iter().map(Vec::len));
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(RationalMatrix::from_triplets(
            1,
            by_dim[0].len(),
            (0..by_dim[0].len()).map(|j| (0, j, rat(1))),
        ));
        let pos = &pos;
        let signs = &signs;
        for d in 1..=top {
            let trip = by_dim[d].iter().enumerate().flat_map(|(j, &e)| {
                signs[e].iter().map(move |&(f, s)| (pos[f], j, rat(s)))
            });
            boundaries.push(RationalMatrix::from_triplets(
                by_dim[d - 1].len(),
                by_dim[d].len(),
                trip.collect::<Vec<_>>(),
            ));
        }
        ChainComplex::new(-1, ranks, boundaries)
    }

    fn incidence_signs(&self, e: usize, signs: &[Vec<(usize, i64)>]) -> Result<Vec<(usize, i64)>> {
        let facets = &self.lower[e];
        if facets.len() < 2 {
            return Err(Error::InvalidPoset(format!(
                "cell {e} of dimension {} has {} facet(s); not a regular CW complex",
                self.dims[e],
                facets.len()
            )));
        }
        // ridge -> [(facet position, incidence of ridge in facet)]
        let mut ridges: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
        for (k, &f) in facets.iter().enumerate() {
            for &(g, s) in &signs[f] {
                ridges.entry(g).or_default().push((k, s));
            }
        }
        let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); facets.len()];
        for (g, list) in &ridges {
            if list.len() != 2 {
                return Err(Error::InvalidPoset(format!(
                    "face {} lies in {} facets of cell {e}; not a regular CW complex",
                    if *g == usize::MAX { "empty".to_string() } else { g.to_string() },
                    list.len()
                )));
            }
            let (a, sa) = list[0];
            let (b, sb) = list[1];
            // eps_a * sa + eps_b * sb = 0
            let rel = -sa * sb;
            adj[a].push((b, rel));
            adj[b].push((a, rel));
        }
        let mut eps = vec![0i64; facets.len()];
        eps[0] = 1;
        let mut queue = vec![0usize];
        while let Some(a) = queue.pop() {
            for &(b, rel) in &adj[a] {
                let want = eps[a] * rel;
                if eps[b] == 0 {
                    eps[b] = want;
                    queue.push(b);
                } else if eps[b] != want {
                    return Err(Error::InvalidPoset(format!(
                        "inconsistent incidence signs on cell {e}"
                    )));
                }
            }
        }
        if eps.contains(&0) {
            return Err(Error::InvalidPoset(format!(
                "boundary of cell {e} is disconnected"
            )));
        }
        Ok(facets.iter().copied().zip(eps).collect())
    }
}

fn transitive_reduction(dims: &[usize], relations: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let n = dims.len();
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in relations {
        upper[a].push(b);
    }
    for u in &mut upper {
        u.sort_unstable();
        u.dedup();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(dims[i]));
    // strict up-sets
    let mut reach: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for &a in &order {
        for &b in &upper[a] {
            reach[a][b] = true;
            let rb = reach[b].clone();
            for (x, &y) in reach[a].iter_mut().zip(&rb) {
                *x |= y;
            }
        }
    }
    let mut covers = Vec::new();
    for a in 0..n {
        for &b in &upper[a] {
            let implied = upper[a].iter().any(|&c| c != b && reach[c][b]);
            if !implied {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// Simplicial complex whose simplices are the chains of `p`.
pub fn order_complex(p: &FacePoset) -> SimplicialComplex {
    let mut facets = p.maximal_chains();
    for f in &mut facets {
        f.sort_unstable();
    }
    SimplicialComplex::from_maximal_faces(p.len(), facets)
}
