//! Fourier–Motzkin elimination for exact emptiness tests of polyhedra.
//!
//! Cost is exponential in the number of eliminated variables; callers keep
//! systems small (a handful of cone generators).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// A conjunction of linear constraints `a·x <= b` and `a·x = b` over `Q^n`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    nvars: usize,
    // Each row is `[a_0, .., a_{n-1}, b]`, integer, primitive.
    ineqs: Vec<Vec<BigInt>>,
    eqs: Vec<Vec<BigInt>>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            nvars,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `a·x <= b`
    pub fn add_le(&mut self, a: &[Rational], b: &Rational) {
        self.ineqs.push(self.row(a, b));
    }

    /// `a·x >= b`
    pub fn add_ge(&mut self, a: &[Rational], b: &Rational) {
        let neg: Vec<Rational> = a.iter().map(|x| -x).collect();
        self.ineqs.push(self.row(&neg, &-b));
    }

    /// `a·x = b`
    pub fn add_eq(&mut self, a: &[Rational], b: &Rational) {
        self.eqs.push(self.row(a, b));
    }

    /// `x_i >= lower`
    pub fn add_lower_bound(&mut self, i: usize, lower: &Rational) {
        let mut a = vec![Rational::zero(); self.nvars];
        a[i] = Rational::one();
        self.add_ge(&a, lower);
    }

    fn row(&self, a: &[Rational], b: &Rational) -> Vec<BigInt> {
        assert_eq!(a.len(), self.nvars, "constraint length");
        let lcm = a
            .iter()
            .chain(std::iter::once(b))
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let mut row: Vec<BigInt> = a
            .iter()
            .chain(std::iter::once(b))
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        make_primitive(&mut row);
        row
    }

    /// Decides whether the system has a rational solution.
    pub fn is_feasible(&self) -> bool {
        let n = self.nvars;
        let mut eqs = self.eqs.clone();
        let mut ineqs = self.ineqs.clone();
        let mut eliminated = vec![false; n];

        // Substitute equalities away.
        while let Some(eq) = eqs.pop() {
            let Some(k) = (0..n).find(|&k| !eq[k].is_zero()) else {
                if !eq[n].is_zero() {
                    return false;
                }
                continue;
            };
            eliminated[k] = true;
            for other in eqs.iter_mut().chain(ineqs.iter_mut()) {
                substitute(other, &eq, k);
            }
        }

        let mut ineqs = match prune(ineqs) {
            Some(v) => v,
            None => return false,
        };

        loop {
            let live: Vec<usize> = (0..n)
                .filter(|&k| !eliminated[k] && ineqs.iter().any(|r| !r[k].is_zero()))
                .collect();
            if live.is_empty() {
                return true;
            }
            // Cheapest variable first: fewest generated pairs.
            let k = *live
                .iter()
                .min_by_key(|&&k| {
                    let pos = ineqs.iter().filter(|r| r[k].is_positive()).count();
                    let neg = ineqs.iter().filter(|r| r[k].is_negative()).count();
                    (pos * neg, k)
                })
                .expect("nonempty");
            eliminated[k] = true;
            let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
            for r in ineqs {
                if r[k].is_positive() {
                    pos.push(r);
                } else if r[k].is_negative() {
                    neg.push(r);
                } else {
                    rest.push(r);
                }
            }
            for p in &pos {
                for q in &neg {
                    // p_k > 0, q_k < 0: (-q_k) p + p_k q eliminates x_k.
                    let cp = -&q[k];
                    let cq = p[k].clone();
                    let mut row: Vec<BigInt> =
                        p.iter().zip(q).map(|(a, b)| &cp * a + &cq * b).collect();
                    make_primitive(&mut row);
                    rest.push(row);
                }
            }
            ineqs = match prune(rest) {
                Some(v) => v,
                None => return false,
            };
        }
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Replaces `x_k` in `row` using the equality `eq` (which has `eq[k] != 0`).
fn substitute(row: &mut Vec<BigInt>, eq: &[BigInt], k: usize) {
    if row[k].is_zero() {
        return;
    }
    // row * |eq_k| - sign(eq_k) * row_k * eq keeps the inequality direction.
    let ek = eq[k].clone();
    let rk = row[k].clone();
    let scale = ek.abs();
    let factor = if ek.is_negative() { -rk } else { rk };
    let mut out: Vec<BigInt> = row
        .iter()
        .zip(eq)
        .map(|(a, b)| &scale * a - &factor * b)
        .collect();
    make_primitive(&mut out);
    *row = out;
}

/// Drops trivially true rows and duplicates; `None` on a trivially false row.
fn prune(rows: Vec<Vec<BigInt>>) -> Option<Vec<Vec<BigInt>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in rows {
        let n = r.len() - 1;
        if r[..n].iter().all(Zero::is_zero) {
            if r[n].is_negative() {
                return None;
            }
            continue;
        }
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn box_is_feasible() {
        let mut s = LinearSystem::new(2);
        s.add_le(&r(&[1, 0]), &rat(1));
        s.add_ge(&r(&[1, 0]), &rat(0));
        s.add_le(&r(&[0, 1]), &rat(1));
        s.add_ge(&r(&[0, 1]), &rat(0));
        assert!(s.is_feasible());
    }

    #[test]
    fn contradictory_halfplanes() {
        let mut s = LinearSystem::new(2);
        s.add_le(&r(&[1, 1]), &rat(0));
        s.add_ge(&r(&[1, 0]), &rat(1));
        s.add_ge(&r(&[0, 1]), &rat(0));
        assert!(!s.is_feasible());
    }

    #[test]
    fn equalities_substituted() {
        let mut s = LinearSystem::new(3);
        s.add_eq(&r(&[1, -1, 0]), &rat(0));
        s.add_eq(&r(&[0, 1, -1]), &rat(0));
        s.add_ge(&r(&[1, 0, 0]), &rat(1));
        s.add_le(&r(&[0, 0, 1]), &rat(0));
        assert!(!s.is_feasible());

        let mut t = LinearSystem::new(2);
        t.add_eq(&r(&[0, 0]), &rat(1));
        assert!(!t.is_feasible());
    }

    #[test]
    fn negative_pivot_equality() {
        // -x + y = 0, y >= 2, x <= 1  -> infeasible
        let mut s = LinearSystem::new(2);
        s.add_eq(&r(&[-1, 1]), &rat(0));
        s.add_ge(&r(&[0, 1]), &rat(2));
        s.add_le(&r(&[1, 0]), &rat(1));
        assert!(!s.is_feasible());
    }

    #[test]
    fn agrees_with_simplex_on_random_systems() {
        use crate::linalg::{lp::nonnegative_solution, RationalMatrix};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=4);
            let rows: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect())
                .collect();
            let b: Vec<Rational> = (0..m).map(|_| rat(rng.gen_range(-3..=3))).collect();
            let a = RationalMatrix::from_i64_rows(&rows);
            let simplex = nonnegative_solution(&a, &b).is_some();
            let mut s = LinearSystem::new(n);
            for (row, bi) in rows.iter().zip(&b) {
                s.add_eq(&r(row), bi);
            }
            for i in 0..n {
                s.add_lower_bound(i, &rat(0));
            }
            assert_eq!(s.is_feasible(), simplex, "rows {rows:?} b {b:?}");
        }
    }
}
