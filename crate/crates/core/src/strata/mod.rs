//! Boundary stratification data: dual complexes, the top weight-row chain
//! complex, and links with duplicated top cells.
//!
//! Components are `0..m` in the Rust API and `1..=m` in JSON; piece indices
//! are 0-based everywhere.

mod hat;
mod random;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainComplex, DeltaComplex};
use crate::error::{Error, Result};
use crate::linalg::{rat, RationalMatrix};

pub use hat::{hat_link, hat_link_of_subdivision, CellMultiplicity};
pub use random::random_incidence;

/// Key of a containment: (index set `I`, piece at `I`, removed component).
pub type ContainmentKey = (Vec<usize>, usize, usize);

/// Connected components of every nonempty `B_I` and where each one sits
/// inside `B_{I \ i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratificationIncidence {
    m: usize,
    pieces: BTreeMap<Vec<usize>, usize>,
    containment: BTreeMap<ContainmentKey, usize>,
}

impl StratificationIncidence {
    /// `pieces` maps sorted index sets to component counts (the empty set
    /// may be listed with count 1). Containments into a level with a single
    /// piece may be omitted.
    pub fn new(
        m: usize,
        pieces: BTreeMap<Vec<usize>, usize>,
        containment: BTreeMap<ContainmentKey, usize>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidStratification(msg));
        let mut levels: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (set, &count) in &pieces {
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return bad(format!("index set {} is not strictly increasing", label(set)));
            }
            if let Some(&i) = set.iter().find(|&&i| i >= m) {
                return bad(format!("component {} exceeds m = {m}", i + 1));
            }
            if set.is_empty() && count != 1 {
                return bad(format!("the ambient space must be connected, got {count} pieces"));
            }
            if count > 0 {
                levels.insert(set.clone(), count);
            }
        }
        levels.insert(Vec::new(), 1);
        let mut full = BTreeMap::new();
        for (set, &count) in &levels {
            for z in 0..count {
                for (t, &i) in set.iter().enumerate() {
                    let mut smaller = set.clone();
                    smaller.remove(t);
                    let Some(&below) = levels.get(&smaller) else {
                        return bad(format!(
                            "B_{} is nonempty but B_{} has no pieces",
                            label(set),
                            label(&smaller)
                        ));
                    };
                    let key = (set.clone(), z, i);
                    let target = match containment.get(&key) {
                        Some(&x) => x,
                        None if below == 1 => 0,
                        None => {
                            return bad(format!(
                                "missing containment for piece {z} of {} without {}",
                                label(set),
                                i + 1
                            ))
                        }
                    };
                    if target >= below {
                        return bad(format!(
                            "piece {z} of {} maps to piece {target} of {}, which has {below}",
                            label(set),
                            label(&smaller)
                        ));
                    }
                    full.insert(key, target);
                }
            }
        }
        if let Some((set, z, i)) = containment.keys().find(|k| !full.contains_key(*k)) {
            return bad(format!("containment for piece {z} of {} without {} refers to nothing", label(set), i + 1));
        }
        let s = StratificationIncidence {
            m,
            pieces: levels,
            containment: full,
        };
        s.check_squares()?;
        Ok(s)
    }

    fn check_squares(&self) -> Result<()> {
        for (set, &count) in &self.pieces {
            for z in 0..count {
                for &i in set {
                    for &j in set {
                        if i >= j {
                            continue;
                        }
                        let via_i = self.contain(&without(set, i), self.contain(set, z, i), j);
                        let via_j = self.contain(&without(set, j), self.contain(set, z, j), i);
                        if via_i != via_j {
                            return Err(Error::InvalidStratification(format!(
                                "containment square for piece {z} of {} removing {} and {} does not commute",
                                label(set),
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn components(&self) -> usize {
        self.m
    }

    /// Nonempty index sets with their piece counts (including the empty set).
    pub fn pieces(&self) -> &BTreeMap<Vec<usize>, usize> {
        &self.pieces
    }

    pub fn piece_count(&self, set: &[usize]) -> usize {
        self.pieces.get(set).copied().unwrap_or(0)
    }

    /// The piece of `B_{I \ i}` containing piece `z` of `B_I`.
    pub fn contain(&self, set: &[usize], z: usize, i: usize) -> usize {
        self.containment[&(set.to_vec(), z, i)]
    }

    /// Largest `|I|` with `B_I` nonempty.
    pub fn depth(&self) -> usize {
        self.pieces.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// Pieces of level `s` in a fixed order: index sets lexicographically,
    /// then piece index.
    fn level(&self, s: usize) -> Vec<(Vec<usize>, usize)> {
        self.pieces
            .iter()
            .filter(|(set, _)| set.len() == s)
            .flat_map(|(set, &count)| (0..count).map(move |z| (set.clone(), z)))
            .collect()
    }

    pub fn three_lines() -> Self {
        let pieces = [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]
            .into_iter()
            .map(|s| (s, 1))
            .collect();
        Self::new(3, pieces, BTreeMap::new()).expect("fixture")
    }

    /// A conic and a line meeting in two points.
    pub fn conic_and_line() -> Self {
        let pieces = [(vec![0], 1), (vec![1], 1), (vec![0, 1], 2)].into_iter().collect();
        Self::new(2, pieces, BTreeMap::new()).expect("fixture")
    }

    pub fn single_component() -> Self {
        Self::new(1, [(vec![0], 1)].into_iter().collect(), BTreeMap::new()).expect("fixture")
    }

    pub fn two_disjoint() -> Self {
        let pieces = [(vec![0], 1), (vec![1], 1)].into_iter().collect();
        Self::new(2, pieces, BTreeMap::new()).expect("fixture")
    }

    /// Four general lines in the plane (6 double points, no triple points).
    pub fn four_lines() -> Self {
        let mut pieces = BTreeMap::new();
        for i in 0..4 {
            pieces.insert(vec![i], 1);
            for j in i + 1..4 {
                pieces.insert(vec![i, j], 1);
            }
        }
        Self::new(4, pieces, BTreeMap::new()).expect("fixture")
    }

    /// Three coordinate planes in 3-space: a solid triangle.
    pub fn three_planes() -> Self {
        let mut pieces = BTreeMap::new();
        for set in [vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            pieces.insert(set, 1);
        }
        Self::new(3, pieces, BTreeMap::new()).expect("fixture")
    }

    /// Every built-in fixture with a short name.
    pub fn fixtures() -> Vec<(&'static str, Self)> {
        vec![
            ("three-lines", Self::three_lines()),
            ("conic-and-line", Self::conic_and_line()),
            ("single-component", Self::single_component()),
            ("two-disjoint", Self::two_disjoint()),
            ("four-lines", Self::four_lines()),
            ("three-planes", Self::three_planes()),
        ]
    }
}

fn without(set: &[usize], i: usize) -> Vec<usize> {
    set.iter().copied().filter(|&x| x != i).collect()
}

/// `I` written 1-based, as in the JSON keys.
fn label(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// One cell per piece; the cell of a piece at `I = {i_0 < … < i_j}` has
/// as its `t`-th facet the piece containing it at `I \ i_t`, with sign
/// `(-1)^t`.
pub fn dual_complex(s: &StratificationIncidence) -> Result<DeltaComplex> {
    let depth = s.depth();
    let mut ids: BTreeMap<(Vec<usize>, usize), usize> = BTreeMap::new();
    let mut cells = Vec::new();
    for level in 1..=depth {
        let mut dim = Vec::new();
        for key in s.level(level) {
            let id = ids.len();
            ids.insert(key, id);
            dim.push(id);
        }
        cells.push(dim);
    }
    let mut boundary = BTreeMap::new();
    for ((set, z), &id) in &ids {
        if set.len() < 2 {
            continue;
        }
        let faces = set
            .iter()
            .enumerate()
            .map(|(t, &i)| {
                let target = (without(set, i), s.contain(set, *z, i));
                (ids[&target], if t % 2 == 0 { 1 } else { -1 })
            })
            .collect();
        boundary.insert(id, faces);
    }
    DeltaComplex::new(cells, boundary)
}

/// `C_s` is spanned by the pieces of level `s` (with `C_0` the ambient
/// piece); the differential sends a piece at `{i_1 < … < i_s}` to the piece
/// containing it at `I \ i_t` with sign `(-1)^(s+t)`.
pub fn weight_row_complex(s: &StratificationIncidence) -> Result<ChainComplex> {
    let depth = s.depth();
    let levels: Vec<Vec<(Vec<usize>, usize)>> = (0..=depth).map(|k| s.level(k)).collect();
    let positions: Vec<BTreeMap<(Vec<usize>, usize), usize>> = levels
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect())
        .collect();
    let ranks: Vec<usize> = levels.iter().map(Vec::len).collect();
    let mut boundaries = Vec::new();
    for k in 1..=depth {
        let mut triplets = Vec::new();
        for (col, (set, z)) in levels[k].iter().enumerate() {
            for (t0, &i) in set.iter().enumerate() {
                let t = t0 + 1;
                let row = positions[k - 1][&(without(set, i), s.contain(set, *z, i))];
                let sign = if (k + t) % 2 == 0 { 1 } else { -1 };
                triplets.push((row, col, rat(sign)));
            }
        }
        boundaries.push(RationalMatrix::from_triplets(ranks[k - 1], ranks[k], triplets));
    }
    let cc = ChainComplex::new(0, ranks, boundaries)?;
    cc.verify()?;
    Ok(cc)
}

/// `{ "m": m, "pieces": { "1,2": count }, "containment": { "1,2|0|1": piece } }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataJson {
    pub m: usize,
    pub pieces: BTreeMap<String, usize>,
    #[serde(default)]
    pub containment: BTreeMap<String, usize>,
}

fn parse_set(key: &str) -> Result<Vec<usize>> {
    let key = key.trim();
    if key.is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|p| {
            let i: usize = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidStratification(format!("bad index set {key:?}")))?;
            i.checked_sub(1)
                .ok_or_else(|| Error::InvalidStratification(format!("components are numbered from 1 in {key:?}")))
        })
        .collect()
}

fn format_set(set: &[usize]) -> String {
    set.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

impl StrataJson {
    pub fn into_incidence(self) -> Result<StratificationIncidence> {
        let mut pieces = BTreeMap::new();
        for (k, v) in &self.pieces {
            let mut set = parse_set(k)?;
            set.sort_unstable();
            pieces.insert(set, *v);
        }
        let mut containment = BTreeMap::new();
        for (k, v) in &self.containment {
            let parts: Vec<&str> = k.split('|').collect();
            let [set, z, i] = parts[..] else {
                return Err(Error::InvalidStratification(format!("containment key {k:?} is not I|piece|i")));
            };
            let mut set = parse_set(set)?;
            set.sort_unstable();
            let z: usize = z
                .trim()
                .parse()
                .map_err(|_| Error::InvalidStratification(format!("bad piece index in {k:?}")))?;
            let i = parse_set(i)?;
            let [i] = i[..] else {
                return Err(Error::InvalidStratification(format!("bad component in {k:?}")));
            };
            containment.insert((set, z, i), *v);
        }
        StratificationIncidence::new(self.m, pieces, containment)
    }
}

impl From<&StratificationIncidence> for StrataJson {
    fn from(s: &StratificationIncidence) -> Self {
        let pieces = s
            .pieces
            .iter()
            .filter(|(set, _)| !set.is_empty())
            .map(|(set, &c)| (format_set(set), c))
            .collect();
        let containment = s
            .containment
            .iter()
            .filter(|((set, _, _), _)| set.len() >= 2)
            .map(|((set, z, i), &t)| (format!("{}|{z}|{}", format_set(set), i + 1), t))
            .collect();
        StrataJson {
            m: s.m,
            pieces,
            containment,
        }
    }
}

impl StratificationIncidence {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: StrataJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidStratification(format!("JSON: {e}")))?;
        raw.into_incidence()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&StrataJson::from(self)).expect("serializes")
    }
}

/// Compares `H_s` of the weight row with `b̃_{s-1}` of the dual complex
/// for every `s`; returns both sequences (indexed by `s`).
pub fn weight_row_against_dual(s: &StratificationIncidence) -> Result<(Vec<usize>, Vec<usize>)> {
    let row = weight_row_complex(s)?.homology()?;
    let dual = crate::complex::reduced_betti(&dual_complex(s)?)?;
    let mut shifted = vec![usize::from(dual.empty)];
    shifted.extend(dual.betti.iter().copied());
    shifted.resize(row.len().max(shifted.len()), 0);
    let mut row = row;
    row.resize(shifted.len(), 0);
    Ok((row, shifted))
}
