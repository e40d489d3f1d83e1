//! Exact rational vectors and square matrices.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn to_fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// A vector with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zeros(dim: usize) -> Self {
        RationalVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RationalVector(entries.iter().map(|&e| int(e)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot(self)
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Self {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }

    /// Copies `self` into a zero vector of length `total`, starting at `offset`.
    pub fn embed(&self, offset: usize, total: usize) -> Self {
        let mut out = vec![Rational::zero(); total];
        out[offset..offset + self.dim()].clone_from_slice(&self.0);
        RationalVector(out)
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A square matrix with exact rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.n + j] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn column(&self, j: usize) -> RationalVector {
        RationalVector((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn neg(&self) -> Self {
        RationalMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn apply(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(v.dim(), self.n);
        RationalVector(
            self.rows()
                .map(|row| {
                    row.iter()
                        .zip(&v.0)
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        )
    }

    /// Exact inverse by Gauss–Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                let x = a.get(col, j) / &p;
                a.set(col, j, x);
                let y = inv.get(col, j) / &p;
                inv.set(col, j, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, x);
                    let y = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, y);
                }
            }
        }
        Some(inv)
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..n {
                a.entries.swap(pivot * n + j, rank * n + j);
            }
            for r in rank + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col) / a.get(rank, col);
                for j in col..n {
                    let x = a.get(r, j) - &factor * a.get(rank, j);
                    a.set(r, j, x);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = RationalMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let x = out.get(i, j) + a * b;
                        out.set(i, j, x);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = RationalMatrix::from_rows(vec![
            vec![int(2), int(-1), int(0)],
            vec![int(-1), int(2), int(-1)],
            vec![int(0), int(-1), int(2)],
        ]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(inv.get(0, 0), &rat(3, 4));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = RationalMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn fraction_strings() {
        assert_eq!(to_fraction_string(&int(-1)), "-1/1");
        assert_eq!(to_fraction_string(&rat(2, 4)), "1/2");
    }
}
