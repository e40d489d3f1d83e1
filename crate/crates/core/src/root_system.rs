//! Reduced crystallographic root systems in their standard ambient
//! realizations, with exact rational coordinates.
//!
//! Products of simple types are laid out block-diagonally: each factor owns a
//! contiguous slice of the ambient space.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational, RationalMatrix, RationalVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple (irreducible) root system type such as `A2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let invalid = |reason| Error::InvalidType {
            family: family.letter(),
            rank,
            reason,
        };
        match family {
            Family::A | Family::B | Family::C if rank < 1 => Err(invalid("rank must be >= 1")),
            Family::D if rank < 2 => Err(invalid("rank must be >= 2")),
            Family::E if !(6..=8).contains(&rank) => Err(invalid("rank must be 6, 7 or 8")),
            Family::F if rank != 4 => Err(invalid("rank must be 4")),
            Family::G if rank != 2 => Err(invalid("rank must be 2")),
            _ => Ok(SimpleType { family, rank }),
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Dimension of the ambient space of the standard realization.
    pub fn ambient_dim(self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B | Family::C | Family::D | Family::F => self.rank,
            Family::E => 8,
            Family::G => 3,
        }
    }

    /// Closed-form number of positive roots.
    pub fn positive_root_count(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Simple roots in the standard (Bourbaki) coordinates.
    pub fn simple_roots(self) -> Vec<RationalVector> {
        let n = self.rank;
        let dim = self.ambient_dim();
        let e = |i: usize| {
            let mut v = RationalVector::zeros(dim);
            v.0[i] = int(1);
            v
        };
        // e_i - e_{i+1}, zero-based
        let diff = |i: usize| e(i).sub(&e(i + 1));
        match self.family {
            Family::A => (0..n).map(diff).collect(),
            Family::B => {
                let mut roots: Vec<_> = (0..n - 1).map(diff).collect();
                roots.push(e(n - 1));
                roots
            }
            Family::C => {
                let mut roots: Vec<_> = (0..n - 1).map(diff).collect();
                roots.push(e(n - 1).scale(&int(2)));
                roots
            }
            Family::D => {
                let mut roots: Vec<_> = (0..n - 1).map(diff).collect();
                roots.push(e(n - 2).add(&e(n - 1)));
                roots
            }
            Family::E => {
                let half = rat(1, 2);
                let mut a1 = RationalVector::zeros(8);
                a1.0[0] = half.clone();
                a1.0[7] = half.clone();
                for x in &mut a1.0[1..7] {
                    *x = -half.clone();
                }
                let mut roots = vec![a1, e(0).add(&e(1)), e(1).sub(&e(0))];
                roots.extend((1..6).map(|i| e(i + 1).sub(&e(i))));
                roots.truncate(n);
                roots
            }
            Family::F => {
                let half = rat(1, 2);
                let a4 = RationalVector(vec![half.clone(), -half.clone(), -half.clone(), -half]);
                vec![diff(1), diff(2), e(3), a4]
            }
            Family::G => vec![
                RationalVector::from_ints(&[1, -1, 0]),
                RationalVector::from_ints(&[-2, 1, 1]),
            ],
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::ParseType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::ParseType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses a comma-separated product label such as `"B2,A2"` (case-insensitive).
pub fn parse_factors(label: &str) -> Result<Vec<SimpleType>> {
    if label.trim().is_empty() {
        return Err(Error::EmptyFactors);
    }
    label.split(',').map(str::parse).collect()
}

pub fn factors_label(factors: &[SimpleType]) -> String {
    factors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Reflection of `v` in the hyperplane orthogonal to `root`.
pub fn reflect(root: &RationalVector, v: &RationalVector) -> Result<RationalVector> {
    if root.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: root.dim(),
            got: v.dim(),
        });
    }
    let norm = root.norm_sq();
    if norm.is_zero() {
        return Err(Error::ZeroRoot);
    }
    let coeff = int(2) * v.dot(root) / norm;
    Ok(v.sub(&root.scale(&coeff)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystem {
    factors: Vec<SimpleType>,
    ambient_dim: usize,
    simple_roots: Vec<RationalVector>,
    /// `2 a_i / <a_i, a_i>`, so that `s_i(v) = v - <v, coroot_i> a_i`.
    simple_coroots: Vec<RationalVector>,
    all_roots: Vec<RationalVector>,
    positive_roots: Vec<RationalVector>,
    /// Inverse Gram matrix of the simple roots, used to expand vectors of the
    /// span in the simple-root basis.
    gram_inverse: RationalMatrix,
}

impl RootSystem {
    pub fn new(factors: &[SimpleType]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyFactors);
        }
        let ambient_dim = factors.iter().map(|f| f.ambient_dim()).sum();
        let mut simple_roots = Vec::new();
        let mut offset = 0;
        for factor in factors {
            let block = factor.ambient_dim();
            simple_roots.extend(
                factor
                    .simple_roots()
                    .iter()
                    .map(|r| r.embed(offset, ambient_dim)),
            );
            offset += block;
        }

        let rank = simple_roots.len();
        let gram = RationalMatrix::from_rows(
            simple_roots
                .iter()
                .map(|a| simple_roots.iter().map(|b| a.dot(b)).collect())
                .collect(),
        );
        let gram_inverse = gram
            .inverse()
            .expect("simple roots of a valid type are linearly independent");
        debug_assert_eq!(gram_inverse.size(), rank);

        let simple_coroots: Vec<_> = simple_roots
            .iter()
            .map(|a| a.scale(&(int(2) / a.norm_sq())))
            .collect();
        let all_roots = close_under_reflections(&simple_roots, &simple_coroots);
        let mut rs = RootSystem {
            factors: factors.to_vec(),
            ambient_dim,
            simple_roots,
            simple_coroots,
            all_roots,
            positive_roots: Vec::new(),
            gram_inverse,
        };
        rs.positive_roots = rs
            .all_roots
            .iter()
            .filter(|r| rs.is_positive(r))
            .cloned()
            .collect();
        Ok(rs)
    }

    pub fn parse(label: &str) -> Result<Self> {
        Self::new(&parse_factors(label)?)
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn label(&self) -> String {
        factors_label(&self.factors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[RationalVector] {
        &self.simple_roots
    }

    /// All roots, sorted lexicographically by coordinates.
    pub fn all_roots(&self) -> &[RationalVector] {
        &self.all_roots
    }

    pub fn positive_roots(&self) -> &[RationalVector] {
        &self.positive_roots
    }

    pub fn positive_root_count(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn contains_root(&self, v: &RationalVector) -> bool {
        self.all_roots.binary_search(v).is_ok()
    }

    /// Coordinates of `v` (assumed to lie in the span of the simple roots) in
    /// the simple-root basis.
    pub fn simple_coordinates(&self, v: &RationalVector) -> Vec<Rational> {
        let pairings =
            RationalVector(self.simple_roots.iter().map(|a| a.dot(v)).collect());
        self.gram_inverse.apply(&pairings).0
    }

    /// A root is positive when its simple-root coordinates are non-negative.
    pub fn is_positive(&self, root: &RationalVector) -> bool {
        let coords = self.simple_coordinates(root);
        coords.iter().all(|c| !c.is_negative()) && coords.iter().any(|c| !c.is_zero())
    }

    pub fn is_negative_root(&self, root: &RationalVector) -> bool {
        self.contains_root(root) && self.is_positive(&root.neg())
    }

    /// Simple reflection `s_i` applied to an ambient vector.
    pub fn reflect_simple(&self, i: usize, v: &RationalVector) -> RationalVector {
        let pairing = v.dot(&self.simple_coroots[i]);
        if pairing.is_zero() {
            return v.clone();
        }
        v.sub(&self.simple_roots[i].scale(&pairing))
    }

    /// `<a_j, coroot_i>`, the amount of `a_i` removed from `a_j` by `s_i`.
    pub fn simple_pairing(&self, j: usize, i: usize) -> Rational {
        self.simple_roots[j].dot(&self.simple_coroots[i])
    }

    /// `2<a_i, a_j> / <a_j, a_j>`.
    pub fn cartan_matrix(&self) -> RationalMatrix {
        let r = self.rank();
        let mut m = RationalMatrix::zeros(r);
        for i in 0..r {
            for j in 0..r {
                let a = &self.simple_roots[i];
                let b = &self.simple_roots[j];
                m.set(i, j, int(2) * a.dot(b) / b.norm_sq());
            }
        }
        m
    }

    /// Matrix of the simple reflection `s_i` in the simple-root basis.
    pub fn simple_reflection_matrix(&self, i: usize) -> RationalMatrix {
        let r = self.rank();
        let mut m = RationalMatrix::identity(r);
        for j in 0..r {
            let x = m.get(i, j) - self.simple_pairing(j, i);
            m.set(i, j, x);
        }
        m
    }

    /// Half the sum of the positive roots.
    pub fn rho(&self) -> RationalVector {
        let sum = self
            .positive_roots
            .iter()
            .fold(RationalVector::zeros(self.ambient_dim), |acc, r| acc.add(r));
        sum.scale(&rat(1, 2))
    }
}

/// Breadth-first closure of the simple roots under the simple reflections.
fn close_under_reflections(
    simple: &[RationalVector],
    coroots: &[RationalVector],
) -> Vec<RationalVector> {
    let mut seen: BTreeSet<RationalVector> = simple.iter().cloned().collect();
    let mut queue: VecDeque<RationalVector> = simple.iter().cloned().collect();
    while let Some(root) = queue.pop_front() {
        for (alpha, coroot) in simple.iter().zip(coroots) {
            let pairing = root.dot(coroot);
            if pairing.is_zero() {
                continue;
            }
            let image = root.sub(&alpha.scale(&pairing));
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn build_root_system(factors: &[SimpleType]) -> Result<RootSystem> {
    RootSystem::new(factors)
}

pub fn positive_root_count(rs: &RootSystem) -> usize {
    rs.positive_root_count()
}

/// Every simple type of rank at most `max_rank`.
pub fn simple_types_up_to_rank(max_rank: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for rank in 1..=max_rank {
        for family in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            if let Ok(t) = SimpleType::new(family, rank) {
                out.push(t);
            }
        }
    }
    out
}
