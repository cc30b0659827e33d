//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers and rationals.
//! Ranks are computed with an integer-preserving elimination, linear
//! feasibility questions go through either an exact simplex phase-1
//! ([`lp`]) or Fourier–Motzkin elimination ([`fm`]).

pub mod fm;
pub mod lp;
mod matrix;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use matrix::RationalMatrix;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A lattice vector in `Z^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, w: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(w)
            .map(|(a, b)| b * a)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }

    /// Gcd of the entries (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divides by the gcd of the entries; signs are kept.
    pub fn primitive(&self) -> Result<IntVector> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(IntVector(self.0.iter().map(|x| x / &g).collect()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Clears denominators of a rational vector and returns the primitive
    /// integer vector pointing in the same direction.
    pub fn primitive_from_rational(v: &[Rational]) -> Result<IntVector> {
        let lcm = v
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        IntVector(ints).primitive()
    }

    /// True if one vector is a positive or negative multiple of the other.
    pub fn is_proportional(&self, other: &IntVector) -> bool {
        if self.len() != other.len() || self.is_zero() || other.is_zero() {
            return false;
        }
        let n = self.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if &self.0[i] * &other.0[j] != &self.0[j] * &other.0[i] {
                    return false;
                }
            }
        }
        (0..n).all(|i| self.0[i].is_zero() == other.0[i].is_zero())
    }

    pub fn first_nonzero_sign(&self) -> Option<num_bigint::Sign> {
        self.0.iter().find(|x| !x.is_zero()).map(|x| x.sign())
    }

    pub fn abs_max(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Integers serialize as JSON numbers when they fit in an `i64`, otherwise
/// as decimal strings; both forms are accepted on input.
impl Serialize for IntVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            match i64::try_from(x) {
                Ok(v) => seq.serialize_element(&v)?,
                Err(_) => seq.serialize_element(&x.to_string())?,
            }
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.into_iter()
            .map(|v| match &v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .or_else(|| n.as_u64().map(BigInt::from))
                    .ok_or_else(|| D::Error::custom(format!("{n} is not an integer"))),
                serde_json::Value::String(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| D::Error::custom(format!("{s:?} is not an integer"))),
                other => Err(D::Error::custom(format!("{other} is not an integer"))),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(IntVector)
    }
}

/// `primitive` as a free function.
pub fn primitive(v: &IntVector) -> Result<IntVector> {
    v.primitive()
}

/// Rank of a list of integer vectors.
pub fn rank_of_vectors(vectors: &[&IntVector], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RationalMatrix::from_int_rows(vectors.iter().map(|v| v.entries()), len).rank()
}
