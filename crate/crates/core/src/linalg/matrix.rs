use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Exact rational matrix.
///
/// Rows are stored as sorted `(column, value)` lists with zeros omitted;
/// boundary matrices of order complexes are overwhelmingly zero and a full
/// grid of big rationals does not fit in memory at a few thousand cells.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds a matrix from dense rows; all rows must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.push(
                row.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect(),
            );
        }
        Ok(RationalMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&x| super::rat(x)).collect())
            .collect();
        Self::from_rows(dense, cols).expect("rectangular input")
    }

    pub fn from_int_rows<'a, I>(rows: I, cols: usize) -> Self
    where
        I: IntoIterator<Item = &'a [BigInt]>,
    {
        let data: Vec<Vec<(usize, Rational)>> = rows
            .into_iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "row length mismatch");
                r.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, Rational::from_integer(x.clone())))
                    .collect()
            })
            .collect();
        RationalMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (i, j, x) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) out of bounds");
            data[i].push((j, x));
        }
        for row in &mut data {
            row.sort_by_key(|(j, _)| *j);
            let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
            for (j, x) in row.drain(..) {
                match merged.last_mut() {
                    Some((lj, lx)) if *lj == j => *lx += x,
                    _ => merged.push((j, x)),
                }
            }
            merged.retain(|(_, x)| !x.is_zero());
            *row = merged;
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out[i][*j] = x.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                data[*j].push((i, x.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<Rational> = vec![Rational::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for row in &self.data {
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    if acc[*j].is_zero() {
                        touched.push(*j);
                    }
                    acc[*j] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &j in &touched {
                let x = std::mem::replace(&mut acc[j], Rational::zero());
                if !x.is_zero() {
                    out.push((j, x));
                }
            }
            touched.clear();
            data.push(out);
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (j, x)| acc + x * &v[*j])
            })
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut data = self.data.clone();
        for row in &other.data {
            data.push(row.iter().map(|(j, x)| (j + self.cols, x.clone())).collect());
        }
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    /// Rank over the rationals.
    ///
    /// Each row is scaled to a primitive integer row, then eliminated in
    /// row order: the pivot of a row is its first nonzero entry after
    /// reduction against all earlier pivots. Row updates are
    /// `p * row - a * pivot_row` followed by division by the row content,
    /// so no fractions ever appear.
    pub fn rank(&self) -> usize {
        let mut pivot_rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        for row in &self.data {
            if row.is_empty() {
                continue;
            }
            let mut r = integer_row(row);
            loop {
                let next = r
                    .iter()
                    .filter_map(|(c, _)| pivot_of_col[*c].map(|p| (p, *c)))
                    .min();
                let Some((p, c)) = next else { break };
                let a = lookup(&r, c).expect("entry present");
                let prow = &pivot_rows[p];
                let pv = lookup(prow, c).expect("pivot present");
                r = combine(&r, &pv, prow, &a);
                if r.is_empty() {
                    break;
                }
            }
            if let Some((c, _)) = r.first() {
                pivot_of_col[*c] = Some(pivot_rows.len());
                pivot_rows.push(r);
            }
        }
        pivot_rows.len()
    }

    /// Column reduction with each pivot at the lowest nonzero entry. Columns
    /// flagged in `skip` are taken to be zero. Returns the pivot row of every
    /// column that stays nonzero, so the rank is the number of `Some`s
    /// provided every skipped column does reduce to zero.
    pub fn reduce_columns(&self, skip: &[bool]) -> Vec<Option<usize>> {
        assert_eq!(skip.len(), self.cols, "one flag per column");
        reduce_lowest(&self.transpose().data, self.rows, skip)
    }

    /// `reduce_columns` of the transpose, without forming it.
    pub fn reduce_rows(&self, skip: &[bool]) -> Vec<Option<usize>> {
        assert_eq!(skip.len(), self.rows, "one flag per row");
        reduce_lowest(&self.data, self.cols, skip)
    }

    /// Basis of the right kernel `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = rref(self.to_dense(), self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref[r][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Some solution of `A x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = self.to_dense();
        for (row, bi) in aug.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        let (rref, pivots) = rref(aug, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rref[r][self.cols].clone();
        }
        Some(x)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

fn reduce_lowest(vectors: &[Vec<(usize, Rational)>], len: usize, skip: &[bool]) -> Vec<Option<usize>> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; len];
    let mut reduced: Vec<Vec<(usize, BigInt)>> = vec![Vec::new(); vectors.len()];
    let mut lows = vec![None; vectors.len()];
    for (j, v) in vectors.iter().enumerate() {
        if skip[j] || v.is_empty() {
            continue;
        }
        let mut r = integer_row(v);
        while let Some((low, a)) = r.last().cloned() {
            let Some(p) = pivot_of[low] else { break };
            let q = &reduced[p];
            let pv = &q.last().expect("pivot vector nonempty").1;
            r = combine(&r, pv, q, &a);
        }
        if let Some((low, _)) = r.last() {
            pivot_of[*low] = Some(j);
            lows[j] = Some(*low);
            reduced[j] = r;
        }
    }
    lows
}

fn integer_row(row: &[(usize, Rational)]) -> Vec<(usize, BigInt)> {
    let lcm = row.iter().fold(BigInt::one(), |l, (_, x)| l.lcm(x.denom()));
    let mut out: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(j, x)| (*j, x.numer() * (&lcm / x.denom())))
        .collect();
    normalize(&mut out);
    out
}

fn lookup(row: &[(usize, BigInt)], c: usize) -> Option<BigInt> {
    row.binary_search_by_key(&c, |(j, _)| *j)
        .ok()
        .map(|k| row[k].1.clone())
}

fn normalize(row: &mut [(usize, BigInt)]) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// `(p/g) * r - (a/g) * q` with `g = gcd(p, a)`, content removed.
fn combine(
    r: &[(usize, BigInt)],
    p: &BigInt,
    q: &[(usize, BigInt)],
    a: &BigInt,
) -> Vec<(usize, BigInt)> {
    let g = p.gcd(a);
    let (p, a) = (p / &g, a / &g);
    let mut out = Vec::with_capacity(r.len() + q.len());
    let (mut i, mut k) = (0, 0);
    while i < r.len() || k < q.len() {
        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
        let ck = q.get(k).map_or(usize::MAX, |e| e.0);
        let (col, val) = if ci < ck {
            i += 1;
            (ci, &p * &r[i - 1].1)
        } else if ck < ci {
            k += 1;
            (ck, -(&a * &q[k - 1].1))
        } else {
            i += 1;
            k += 1;
            (ci, &p * &r[i - 1].1 - &a * &q[k - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    normalize(&mut out);
    out
}

/// Reduced row echelon form of a dense rational matrix, with the list of
/// pivot columns. Intended for the small systems arising from cone
/// geometry.
pub(crate) fn rref(mut m: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use proptest::prelude::*;

    /// Textbook Gauss–Jordan over the rationals, independent of the
    /// fraction-free path.
    fn naive_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rank][c];
                    for j in 0..cols {
                        let d = &f * &m[rank][j];
                        m[i][j] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(
            RationalMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]).rank(),
            1
        );
        assert_eq!(RationalMatrix::zeros(0, 0).rank(), 0);
        assert_eq!(RationalMatrix::zeros(0, 4).rank(), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_rows(
            vec![
                vec![crate::linalg::rat_frac(1, 2), crate::linalg::rat_frac(1, 3)],
                vec![crate::linalg::rat_frac(3, 2), rat(1)],
            ],
            2,
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn nullspace_and_solve() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, 1, 1], vec![0, 1, 2]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
        let x = m.solve(&[rat(3), rat(3)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(3), rat(3)]);
        let bad = RationalMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        assert!(bad.solve(&[rat(1), rat(2)]).is_none());
    }

    #[test]
    fn multiplication_matches_dense() {
        let a = RationalMatrix::from_i64_rows(&[vec![1, -1, 0], vec![0, 1, -1]]);
        let b = RationalMatrix::from_i64_rows(&[vec![1], vec![1], vec![1]]);
        assert!(a.mul(&b).unwrap().is_zero());
        let c = RationalMatrix::from_i64_rows(&[vec![2, 0], vec![1, 3]]);
        let d = c.mul(&c).unwrap();
        assert_eq!(d, RationalMatrix::from_i64_rows(&[vec![4, 0], vec![5, 9]]));
    }

    #[test]
    fn triplets_merge_and_cancel() {
        let m = RationalMatrix::from_triplets(
            2,
            2,
            vec![(0, 0, rat(1)), (0, 0, rat(-1)), (1, 1, rat(2)), (1, 1, rat(3))],
        );
        assert_eq!(m.get(0, 0), rat(0));
        assert_eq!(m.get(1, 1), rat(5));
        assert_eq!(m.nnz(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
        })
    }

    fn sparse_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(
                proptest::collection::vec(prop_oneof![4 => Just(0i64), 1 => -2i64..=2], c),
                r,
            )
        })
    }

    proptest! {
        #[test]
        fn rank_matches_naive_oracle(rows in small_matrix()) {
            let m = RationalMatrix::from_i64_rows(&rows);
            prop_assert_eq!(m.rank(), naive_rank(&rows));
        }

        #[test]
        fn sparse_rank_matches_naive_oracle(rows in sparse_matrix()) {
            let m = RationalMatrix::from_i64_rows(&rows);
            prop_assert_eq!(m.rank(), naive_rank(&rows));
        }

        #[test]
        fn column_reduction_rank(rows in sparse_matrix()) {
            let m = RationalMatrix::from_i64_rows(&rows);
            let lows = m.reduce_columns(&vec![false; m.cols()]);
            prop_assert_eq!(lows.iter().flatten().count(), naive_rank(&rows));
            let mut seen: Vec<usize> = lows.iter().flatten().copied().collect();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), lows.iter().flatten().count());
            prop_assert_eq!(m.reduce_rows(&vec![false; m.rows()]), m.transpose().reduce_columns(&vec![false; m.rows()]));
        }

        #[test]
        fn rank_of_transpose(rows in small_matrix()) {
            let m = RationalMatrix::from_i64_rows(&rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_of_block_diagonal(a in small_matrix(), b in sparse_matrix()) {
            let ma = RationalMatrix::from_i64_rows(&a);
            let mb = RationalMatrix::from_i64_rows(&b);
            prop_assert_eq!(ma.direct_sum(&mb).rank(), ma.rank() + mb.rank());
        }

        #[test]
        fn nullspace_dimension(rows in small_matrix()) {
            let m = RationalMatrix::from_i64_rows(&rows);
            let ns = m.nullspace();
            prop_assert_eq!(ns.len() + m.rank(), m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
    }
}
