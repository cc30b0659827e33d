use std::collections::BTreeMap;

use crate::complex::{order_complex, FacePoset, SimplicialComplex};
use crate::error::{Error, Result};

/// How many copies of each top cell to use; cells not listed get 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellMultiplicity(BTreeMap<usize, usize>);

impl CellMultiplicity {
    pub fn new(map: BTreeMap<usize, usize>) -> Result<Self> {
        if let Some((cell, _)) = map.iter().find(|(_, &k)| k == 0) {
            return Err(Error::InvalidMultiplicity(format!("cell {cell} has multiplicity 0")));
        }
        Ok(CellMultiplicity(map))
    }

    /// Parses `"cell:k,cell:k,..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let bad = || Error::InvalidMultiplicity(format!("expected cell:k, got {part:?}"));
            let (cell, k) = part.split_once(':').ok_or_else(bad)?;
            let cell: usize = cell.trim().parse().map_err(|_| bad())?;
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            if map.insert(cell, k).is_some() {
                return Err(Error::InvalidMultiplicity(format!("cell {cell} listed twice")));
            }
        }
        Self::new(map)
    }

    pub fn get(&self, cell: usize) -> usize {
        self.0.get(&cell).copied().unwrap_or(1)
    }

    pub fn entries(&self) -> &BTreeMap<usize, usize> {
        &self.0
    }

    /// `Σ (k - 1)`.
    pub fn extra_copies(&self) -> usize {
        self.0.values().map(|k| k - 1).sum()
    }

    fn check(&self, p: &FacePoset) -> Result<()> {
        for &cell in self.0.keys() {
            if cell >= p.len() {
                return Err(Error::InvalidMultiplicity(format!("cell {cell} does not exist")));
            }
            if !p.upper_covers(cell).is_empty() {
                return Err(Error::InvalidMultiplicity(format!("cell {cell} is not maximal")));
            }
        }
        Ok(())
    }
}

/// Replaces each maximal cell of multiplicity `k` by `k` cells with the
/// same boundary. Copies are appended after the original elements, cell by
/// cell in increasing order.
pub fn hat_link(p: &FacePoset, mult: &CellMultiplicity) -> Result<FacePoset> {
    mult.check(p)?;
    let mut dims = p.dims().to_vec();
    let mut covers = p.covers().to_vec();
    for (&cell, &k) in mult.entries() {
        for _ in 1..k {
            let copy = dims.len();
            dims.push(p.dim(cell));
            covers.extend(p.lower_covers(cell).iter().map(|&y| (y, copy)));
        }
    }
    Ok(FacePoset::from_covers_unchecked(dims, covers))
}

/// The same construction carried out on the barycentric subdivision: every
/// simplex of the order complex of `p` that contains a duplicated cell's
/// vertex is copied with that vertex replaced.
pub fn hat_link_of_subdivision(p: &FacePoset, mult: &CellMultiplicity) -> Result<SimplicialComplex> {
    mult.check(p)?;
    let sd = order_complex(p);
    let mut facets = sd.facets().to_vec();
    let mut next = p.len();
    for (&cell, &k) in mult.entries() {
        let star: Vec<Vec<usize>> = sd.facets().iter().filter(|f| f.contains(&cell)).cloned().collect();
        for _ in 1..k {
            for f in &star {
                facets.push(f.iter().map(|&v| if v == cell { next } else { v }).collect());
            }
            next += 1;
        }
    }
    SimplicialComplex::new(next, facets)
}
