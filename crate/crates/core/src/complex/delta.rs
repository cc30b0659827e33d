use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::chain::ChainComplex;
use crate::error::{Error, Result};
use crate::linalg::{rat, RationalMatrix};

/// A Δ-complex given by explicit signed boundary data.
///
/// `cells[d]` lists the ids of the `d`-cells. A cell of dimension `d >= 1`
/// has exactly `d + 1` boundary entries `(facet id, sign)`, one per facet
/// of the simplex; several cells may share the same facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    cells: Vec<Vec<usize>>,
    boundary: BTreeMap<usize, Vec<(usize, i64)>>,
}

impl DeltaComplex {
    pub fn new(cells: Vec<Vec<usize>>, boundary: BTreeMap<usize, Vec<(usize, i64)>>) -> Result<Self> {
        let mut dim_of: HashMap<usize, usize> = HashMap::new();
        for (d, ids) in cells.iter().enumerate() {
            for &id in ids {
                if dim_of.insert(id, d).is_some() {
                    return Err(Error::InvalidBoundary(format!("cell id {id} listed twice")));
                }
            }
        }
        for (d, ids) in cells.iter().enumerate() {
            for &id in ids {
                let entries = boundary.get(&id).map_or(&[][..], Vec::as_slice);
                if d == 0 {
                    if !entries.is_empty() {
                        return Err(Error::InvalidBoundary(format!(
                            "vertex {id} must not have boundary entries"
                        )));
                    }
                    continue;
                }
                if entries.len() != d + 1 {
                    return Err(Error::InvalidBoundary(format!(
                        "{d}-cell {id} has {} facets, expected {}",
                        entries.len(),
                        d + 1
                    )));
                }
                for &(f, s) in entries {
                    if dim_of.get(&f) != Some(&(d - 1)) {
                        return Err(Error::InvalidBoundary(format!(
                            "facet {f} of {d}-cell {id} is not a {}-cell",
                            d - 1
                        )));
                    }
                    if s != 1 && s != -1 {
                        return Err(Error::InvalidBoundary(format!(
                            "incidence sign {s} on cell {id} is not ±1"
                        )));
                    }
                }
            }
        }
        let known: HashSet<usize> = dim_of.keys().copied().collect();
        if let Some(id) = boundary.keys().find(|id| !known.contains(id)) {
            return Err(Error::InvalidBoundary(format!("boundary given for unknown cell {id}")));
        }
        Ok(DeltaComplex { cells, boundary })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn boundary_of(&self, id: usize) -> &[(usize, i64)] {
        self.boundary.get(&id).map_or(&[][..], Vec::as_slice)
    }

    pub fn dimension(&self) -> Option<usize> {
        self.cells.iter().rposition(|c| !c.is_empty())
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        let d = self.dimension().map_or(0, |d| d + 1);
        self.cells[..d].iter().map(Vec::len).collect()
    }

    /// Augmented cellular chain complex; every vertex maps to the empty
    /// cell with coefficient one.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let top = match self.dimension() {
            None => return ChainComplex::new(-1, vec![1], vec![]),
            Some(d) => d,
        };
        let mut pos: HashMap<usize, usize> = HashMap::new();
        for ids in &self.cells {
            for (k, &id) in ids.iter().enumerate() {
                pos.insert(id, k);
            }
        }
        let mut ranks = vec![1];
        ranks.extend(self.cells[..=top].iter().map(Vec::len));
        let mut boundaries = vec![RationalMatrix::from_triplets(
            1,
            self.cells[0].len(),
            (0..self.cells[0].len()).map(|j| (0, j, rat(1))),
        )];
        for d in 1..=top {
            let trip: Vec<_> = self.cells[d]
                .iter()
                .enumerate()
                .flat_map(|(j, id)| {
                    self.boundary_of(*id)
                        .iter()
                        .map(|&(f, s)| (pos[&f], j, rat(s)))
                        .collect::<Vec<_>>()
                })
                .collect();
            boundaries.push(RationalMatrix::from_triplets(
                self.cells[d - 1].len(),
                self.cells[d].len(),
                trip,
            ));
        }
        let cc = ChainComplex::new(-1, ranks, boundaries)?;
        cc.verify()?;
        Ok(cc)
    }

    pub fn reduced_euler_characteristic(&self) -> i64 {
        let s: i64 = self
            .cell_counts()
            .iter()
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        s - 1
    }
}

#[derive(Serialize, Deserialize)]
struct DeltaComplexJson {
    cells: Vec<Vec<usize>>,
    #[serde(default)]
    boundary: BTreeMap<String, Vec<(usize, i64)>>,
}

impl Serialize for DeltaComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DeltaComplexJson {
            cells: self.cells.clone(),
            boundary: self
                .boundary
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DeltaComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DeltaComplexJson::deserialize(d)?;
        let mut boundary = BTreeMap::new();
        for (k, v) in raw.boundary {
            let id: usize = k
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("cell id {k:?} is not an integer")))?;
            boundary.insert(id, v);
        }
        DeltaComplex::new(raw.cells, boundary).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::reduced_betti;

    #[test]
    fn doubled_edge_is_circle() {
        let mut b = BTreeMap::new();
        b.insert(10, vec![(1, 1), (0, -1)]);
        b.insert(11, vec![(1, 1), (0, -1)]);
        let k = DeltaComplex::new(vec![vec![0, 1], vec![10, 11]], b).unwrap();
        assert_eq!(reduced_betti(&k).unwrap().betti, vec![0, 1]);
        assert_eq!(k.reduced_euler_characteristic(), -1);
    }

    #[test]
    fn bad_signs_detected() {
        // two edges 0->1, a triangle whose boundary does not close up
        let mut b = BTreeMap::new();
        b.insert(10, vec![(1, 1), (0, -1)]);
        b.insert(11, vec![(1, 1), (0, -1)]);
        b.insert(12, vec![(0, 1), (0, -1)]);
        b.insert(20, vec![(10, 1), (11, 1), (12, 1)]);
        let k = DeltaComplex::new(vec![vec![0, 1], vec![10, 11, 12], vec![20]], b).unwrap();
        let err = reduced_betti(&k).unwrap_err();
        assert!(err.to_string().starts_with("invalid boundary data"));
    }

    #[test]
    fn facet_count_checked() {
        let mut b = BTreeMap::new();
        b.insert(10, vec![(1, 1)]);
        assert!(DeltaComplex::new(vec![vec![0, 1], vec![10]], b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"cells":[[0,1],[2]],"boundary":{"2":[[1,1],[0,-1]]}}"#;
        let k: DeltaComplex = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&k).unwrap(), text);
        assert_eq!(reduced_betti(&k).unwrap().betti, vec![0, 0]);
    }
}
