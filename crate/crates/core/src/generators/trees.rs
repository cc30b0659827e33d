use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::IntVector;

/// A bipartition of the leaves `1..=n` with both sides of size at least 2,
/// stored by its side avoiding leaf `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    n: usize,
    side: u64,
}

impl Split {
    /// `side` lists leaves in `1..=n`; either side may be given.
    pub fn new(n: usize, side: &[usize]) -> Result<Split> {
        if !(4..=64).contains(&n) {
            return Err(Error::InvalidSplit(format!("leaf count {n} outside 4..=64")));
        }
        let mut mask = 0u64;
        for &leaf in side {
            if leaf == 0 || leaf > n {
                return Err(Error::InvalidSplit(format!("leaf {leaf} outside 1..={n}")));
            }
            mask |= 1 << (leaf - 1);
        }
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if mask >> (n - 1) & 1 == 1 {
            mask = all & !mask;
        }
        let size = mask.count_ones() as usize;
        if size < 2 || n - size < 2 {
            return Err(Error::InvalidSplit(format!("{side:?} leaves a side with fewer than 2 leaves")));
        }
        Ok(Split { n, side: mask })
    }

    pub fn leaves(&self) -> usize {
        self.n
    }

    /// The canonical side, 1-based and sorted.
    pub fn side(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.side >> i & 1 == 1).map(|i| i + 1).collect()
    }

    fn complement(&self) -> u64 {
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        all & !self.side
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side: Vec<String> = self.side().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", side.join(","))
    }
}

/// Two splits fit in one tree iff one of the four pairwise intersections
/// of their sides is empty.
pub fn splits_compatible(a: &Split, b: &Split) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::InvalidSplit(format!(
            "splits on {} and {} leaves cannot be compared",
            a.n, b.n
        )));
    }
    let (x, xc, y, yc) = (a.side, a.complement(), b.side, b.complement());
    Ok(x & y == 0 || x & yc == 0 || xc & y == 0 || xc & yc == 0)
}

/// Every split of `1..=n`, ordered by canonical side (as a bitmask).
pub fn all_splits(n: usize) -> Result<Vec<Split>> {
    if n < 4 {
        return Err(Error::TooFewLeaves(n));
    }
    if n > 20 {
        return Err(Error::InvalidSplit(format!("{n} leaves is beyond enumeration range")));
    }
    Ok((0u64..1 << (n - 1))
        .filter(|m| {
            let k = m.count_ones() as usize;
            k >= 2 && k <= n - 2
        })
        .map(|side| Split { n, side })
        .collect())
}

/// The link of tree space: vertices are [`all_splits`], simplices are
/// sets of pairwise compatible splits.
pub fn tree_space_link(n: usize) -> Result<SimplicialComplex> {
    let splits = all_splits(n)?;
    let k = splits.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            if splits_compatible(&splits[i], &splits[j])? {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let cliques = maximal_cliques(&adj);
    SimplicialComplex::new(k, cliques)
}

/// Tree space as a fan in the space of dissimilarity vectors on pairs
/// `i < j`: the ray of a split is its cut metric, the lineality is spanned
/// by the vectors `d_ij = a_i + a_j`, and cones are sets of compatible splits.
pub fn tree_space_fan(n: usize) -> Result<Fan> {
    let splits = all_splits(n)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let lineality = (0..n)
        .map(|leaf| {
            let v: Vec<i64> = pairs.iter().map(|&(i, j)| i64::from(i == leaf || j == leaf)).collect();
            IntVector::from_i64(&v)
        })
        .collect();
    let rays = splits
        .iter()
        .map(|s| {
            let v: Vec<i64> = pairs
                .iter()
                .map(|&(i, j)| i64::from((s.side >> i & 1) != (s.side >> j & 1)))
                .collect();
            IntVector::from_i64(&v)
        })
        .collect();
    let (poset, faces) = tree_space_link(n)?.face_poset();
    let mut cones = vec![Vec::new()];
    cones.extend(faces);
    let mut relation: Vec<(usize, usize)> = poset.covers().iter().map(|&(a, b)| (a + 1, b + 1)).collect();
    relation.extend(poset.minimal_elements().into_iter().map(|v| (0, v + 1)));
    Fan::new(pairs.len(), lineality, rays, cones, relation)
}

/// Bron–Kerbosch with pivoting; each clique sorted, output sorted.
fn maximal_cliques(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let neighbours: Vec<Vec<bool>> = adj
        .iter()
        .map(|a| {
            let mut row = vec![false; n];
            a.iter().for_each(|&j| row[j] = true);
            row
        })
        .collect();
    let mut out = Vec::new();
    fn expand(
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        nb: &[Vec<bool>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| nb[u][v]).count())
            .expect("nonempty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !nb[pivot][v]).collect();
        let (mut p, mut x) = (p, x);
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&u| nb[v][u]).collect();
            let nx = x.iter().copied().filter(|&u| nb[v][u]).collect();
            expand(r, np, nx, nb, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    expand(&mut Vec::new(), (0..n).collect(), Vec::new(), &neighbours, &mut out);
    out.sort();
    out
}

/// `{ "n": n, "splits": [[...], ...] }` with 1-based leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitSetJson {
    pub n: usize,
    pub splits: Vec<Vec<usize>>,
}

impl SplitSetJson {
    pub fn into_splits(self) -> Result<Vec<Split>> {
        self.splits.iter().map(|s| Split::new(self.n, s)).collect()
    }

    pub fn from_splits(n: usize, splits: &[Split]) -> Self {
        SplitSetJson {
            n,
            splits: splits.iter().map(Split::side).collect(),
        }
    }
}

/// True iff the splits are pairwise compatible, i.e. form a tree.
pub fn is_tree(splits: &[Split]) -> Result<bool> {
    for (i, a) in splits.iter().enumerate() {
        for b in &splits[i + 1..] {
            if !splits_compatible(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
