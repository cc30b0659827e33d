use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

/// A bounded chain complex of finite-dimensional rational vector spaces.
///
/// Degrees run from `min_degree` to `min_degree + ranks.len() - 1`;
/// `boundaries[k]` is the differential from degree `min_degree + k + 1`
/// to degree `min_degree + k`, a `ranks[k] x ranks[k + 1]` matrix.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    min_degree: isize,
    ranks: Vec<usize>,
    boundaries: Vec<RationalMatrix>,
}

impl ChainComplex {
    pub fn new(
        min_degree: isize,
        ranks: Vec<usize>,
        boundaries: Vec<RationalMatrix>,
    ) -> Result<Self> {
        if ranks.len() != boundaries.len() + 1 && !(ranks.is_empty() && boundaries.is_empty()) {
            return Err(Error::InvalidBoundary(format!(
                "{} ranks need {} boundary matrices, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (k, d) in boundaries.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::InvalidBoundary(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    min_degree + k as isize + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        Ok(ChainComplex {
            min_degree,
            ranks,
            boundaries,
        })
    }

    pub fn min_degree(&self) -> isize {
        self.min_degree
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundaries(&self) -> &[RationalMatrix] {
        &self.boundaries
    }

    /// Differential leaving `degree`, if both ends are in range.
    pub fn boundary(&self, degree: isize) -> Option<&RationalMatrix> {
        let k = degree - self.min_degree - 1;
        if k < 0 {
            return None;
        }
        self.boundaries.get(k as usize)
    }

    /// Checks that consecutive differentials compose to the zero matrix.
    pub fn verify(&self) -> Result<()> {
        for k in 1..self.boundaries.len() {
            let comp = self.boundaries[k - 1]
                .mul(&self.boundaries[k])
                .expect("shapes checked at construction");
            if !comp.is_zero() {
                return Err(Error::InvalidBoundary(format!(
                    "boundary of boundary is nonzero out of degree {}",
                    self.min_degree + k as isize + 1
                )));
            }
        }
        Ok(())
    }

    /// Ranks of the differentials, reduced from the coboundary side bottom
    /// degree first. A cell that is the pivot of a reduced coboundary column
    /// one degree down is skipped, since its own column reduces to zero.
    fn boundary_ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.boundaries.len()];
        let mut cleared: Option<Vec<bool>> = None;
        for (k, d) in self.boundaries.iter().enumerate() {
            let skip = cleared.take().unwrap_or_else(|| vec![false; d.rows()]);
            let lows = d.reduce_rows(&skip);
            let mut next = vec![false; d.cols()];
            for &low in lows.iter().flatten() {
                next[low] = true;
            }
            out[k] = lows.iter().flatten().count();
            cleared = Some(next);
        }
        out
    }

    /// Rational homology dimensions, one per degree.
    pub fn homology(&self) -> Result<Vec<usize>> {
        self.verify()?;
        let ranks_of_d = self.boundary_ranks();
        Ok((0..self.ranks.len())
            .map(|k| {
                let outgoing = if k == 0 { 0 } else { ranks_of_d[k - 1] };
                let incoming = ranks_of_d.get(k).copied().unwrap_or(0);
                self.ranks[k] - outgoing - incoming
            })
            .collect())
    }

    /// Alternating sum of the chain ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| {
                let deg = self.min_degree + k as isize;
                if deg.rem_euclid(2) == 0 {
                    r as i64
                } else {
                    -(r as i64)
                }
            })
            .sum()
    }
}

pub fn homology_of_chain_complex(cc: &ChainComplex) -> Result<Vec<usize>> {
    cc.homology()
}

/// Reduced rational Betti numbers of a cell complex.
///
/// `betti[i]` is the dimension of reduced homology in degree `i` for
/// `i = 0..=dim`. The empty complex has no cells and its only nonzero
/// reduced group sits in degree -1; that case is flagged by `empty`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ReducedBetti {
    pub betti: Vec<usize>,
    pub empty: bool,
}

impl ReducedBetti {
    /// Reads reduced Betti numbers off an augmented complex (degree -1 is
    /// the empty cell).
    pub fn from_augmented(cc: &ChainComplex) -> Result<Self> {
        assert_eq!(cc.min_degree(), -1, "augmented complex expected");
        let h = cc.homology()?;
        Ok(ReducedBetti {
            empty: h[0] > 0 && cc.ranks().len() == 1,
            betti: h[1..].to_vec(),
        })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.betti
    }

    /// Dimension of the complex, `None` when empty.
    pub fn top_dimension(&self) -> Option<usize> {
        self.betti.len().checked_sub(1)
    }

    /// True when every reduced Betti number below the top dimension vanishes.
    pub fn top_concentrated(&self) -> bool {
        match self.top_dimension() {
            None => true,
            Some(d) => self.betti[..d].iter().all(|&b| b == 0),
        }
    }

    pub fn top(&self) -> usize {
        self.betti.last().copied().unwrap_or(0)
    }

    /// Reduced Euler characteristic from the homology side.
    pub fn euler_characteristic(&self) -> i64 {
        let s: i64 = self
            .betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if self.empty {
            s - 1
        } else {
            s
        }
    }
}
