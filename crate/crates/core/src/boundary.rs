//! The boundary `∂H^n = R^{n-1} ∪ {∞}` of real hyperbolic space, its Möbius
//! transformations and the positive cross-ratio.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Largest Euclidean norm of a sampled finite point.
pub const SAMPLE_RADIUS: f64 = 10.0;
/// Probability that a sampled factor places one of its points at infinity.
pub const INFINITY_PROBABILITY: f64 = 0.05;
/// Resampling budget of [`random_generic_tuple`].
pub const MAX_SAMPLING_ATTEMPTS: usize = 1000;
/// Orthogonality tolerance for [`Generator::Orthogonal`].
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPoint {
    Finite(Vec<f64>),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().all(|x| x.is_finite()) {
            Ok(BoundaryPoint::Finite(coords))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn origin(dim: usize) -> Self {
        BoundaryPoint::Finite(vec![0.0; dim])
    }

    /// `c * e_1` in `R^dim`.
    pub fn on_axis(dim: usize, c: f64) -> Self {
        let mut v = vec![0.0; dim];
        v[0] = c;
        BoundaryPoint::Finite(v)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    pub fn coords(&self) -> Option<&[f64]> {
        match self {
            BoundaryPoint::Finite(c) => Some(c),
            BoundaryPoint::Infinity => None,
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Distance between two boundary points, or `None` when either is ∞.
pub fn finite_distance(a: &BoundaryPoint, b: &BoundaryPoint) -> Option<f64> {
    Some(distance(a.coords()?, b.coords()?))
}

/// Checks that the points are pairwise at least `separation` apart (distinct
/// when `separation` is zero), share one dimension and include at most one ∞.
pub fn check_generic(points: &[&BoundaryPoint], separation: f64) -> Result<()> {
    let mut dim = None;
    let mut infinities = 0;
    for p in points {
        match p {
            BoundaryPoint::Infinity => infinities += 1,
            BoundaryPoint::Finite(c) => match dim {
                None => dim = Some(c.len()),
                Some(d) if d != c.len() => {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: c.len(),
                    })
                }
                _ => {}
            },
        }
    }
    if infinities > 1 {
        return Err(Error::MultipleInfinities);
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if let Some(d) = finite_distance(points[i], points[j]) {
                if d == 0.0 || d < separation {
                    return Err(Error::DegenerateTuple(i, j));
                }
            }
        }
    }
    Ok(())
}

/// Positive cross-ratio `|x2-x0| |x3-x1| / (|x2-x1| |x3-x0|)`.
///
/// A norm involving ∞ is replaced by 1; every point appears once upstairs and
/// once downstairs, so this is the limiting value.
pub fn cross_ratio(
    x0: &BoundaryPoint,
    x1: &BoundaryPoint,
    x2: &BoundaryPoint,
    x3: &BoundaryPoint,
) -> Result<f64> {
    cross_ratio_separated(x0, x1, x2, x3, 0.0)
}

pub fn cross_ratio_separated(
    x0: &BoundaryPoint,
    x1: &BoundaryPoint,
    x2: &BoundaryPoint,
    x3: &BoundaryPoint,
    separation: f64,
) -> Result<f64> {
    check_generic(&[x0, x1, x2, x3], separation)?;
    Ok(cross_ratio_unchecked(x0, x1, x2, x3))
}

pub(crate) fn cross_ratio_unchecked(
    x0: &BoundaryPoint,
    x1: &BoundaryPoint,
    x2: &BoundaryPoint,
    x3: &BoundaryPoint,
) -> f64 {
    let d = |a, b| finite_distance(a, b).unwrap_or(1.0);
    (d(x2, x0) * d(x3, x1)) / (d(x2, x1) * d(x3, x0))
}

/// One generator of the Möbius group acting on `R^dim ∪ {∞}`.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    Translate(Vec<f64>),
    Dilate(f64),
    /// Row-major orthogonal matrix.
    Orthogonal(Vec<Vec<f64>>),
    /// `x ↦ x / |x|^2`, exchanging 0 and ∞.
    Invert,
}

impl Generator {
    fn validate(&self, dim: usize) -> Result<()> {
        match self {
            Generator::Translate(b) => {
                if b.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: b.len(),
                    });
                }
                if !b.iter().all(|x| x.is_finite()) {
                    return Err(Error::NonFinite);
                }
            }
            Generator::Dilate(l) => {
                if !(l.is_finite() && *l > 0.0) {
                    return Err(Error::InvalidGenerator("dilation factor must be positive"));
                }
            }
            Generator::Orthogonal(q) => {
                if q.len() != dim || q.iter().any(|r| r.len() != dim) {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: q.len(),
                    });
                }
                if orthogonality_residual(q) > ORTHOGONALITY_TOLERANCE {
                    return Err(Error::InvalidGenerator("matrix is not orthogonal"));
                }
            }
            Generator::Invert => {}
        }
        Ok(())
    }

    /// Image of `x`; `dim` is only consulted to place ∞ at the origin.
    pub fn apply(&self, x: &BoundaryPoint, dim: usize) -> BoundaryPoint {
        let BoundaryPoint::Finite(v) = x else {
            return match self {
                Generator::Invert => BoundaryPoint::origin(dim),
                _ => BoundaryPoint::Infinity,
            };
        };
        match self {
            Generator::Translate(b) => {
                BoundaryPoint::Finite(v.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            Generator::Dilate(l) => BoundaryPoint::Finite(v.iter().map(|x| x * l).collect()),
            Generator::Orthogonal(q) => BoundaryPoint::Finite(
                q.iter()
                    .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
                    .collect(),
            ),
            Generator::Invert => {
                let n2: f64 = v.iter().map(|x| x * x).sum();
                if n2 == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(v.iter().map(|x| x / n2).collect())
                }
            }
        }
    }
}

/// Max entry of `|Q^T Q - I|`.
pub fn orthogonality_residual(q: &[Vec<f64>]) -> f64 {
    let n = q.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = (0..n).map(|k| q[k][i] * q[k][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

/// A word in Möbius generators, applied left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusMap {
    dim: usize,
    generators: Vec<Generator>,
}

impl MobiusMap {
    pub fn new(dim: usize, generators: Vec<Generator>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("boundary dimension must be >= 1"));
        }
        for g in &generators {
            g.validate(dim)?;
        }
        Ok(MobiusMap { dim, generators })
    }

    pub fn identity(dim: usize) -> Self {
        MobiusMap {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn apply(&self, x: &BoundaryPoint) -> BoundaryPoint {
        self.generators
            .iter()
            .fold(x.clone(), |acc, g| g.apply(&acc, self.dim))
    }
}

pub fn apply_mobius(m: &MobiusMap, x: &BoundaryPoint) -> BoundaryPoint {
    m.apply(x)
}

/// One boundary point per factor of a product of hyperbolic isometry groups.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductBoundaryPoint {
    pub components: Vec<BoundaryPoint>,
}

impl ProductBoundaryPoint {
    pub fn new(components: Vec<BoundaryPoint>) -> Self {
        ProductBoundaryPoint { components }
    }

    pub fn factor(&self, i: usize) -> &BoundaryPoint {
        &self.components[i]
    }
}

/// Independent Möbius maps, one per factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMobius(pub Vec<MobiusMap>);

impl ProductMobius {
    pub fn apply(&self, x: &ProductBoundaryPoint) -> ProductBoundaryPoint {
        ProductBoundaryPoint::new(
            self.0
                .iter()
                .zip(&x.components)
                .map(|(m, p)| m.apply(p))
                .collect(),
        )
    }

    pub fn apply_all(&self, tuple: &[ProductBoundaryPoint]) -> Vec<ProductBoundaryPoint> {
        tuple.iter().map(|p| self.apply(p)).collect()
    }
}

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` product points whose factor `i` lives in `R^{dims[i]} ∪ {∞}`.
///
/// Within each factor the finite points lie in the ball of radius
/// [`SAMPLE_RADIUS`] and are pairwise at least `separation` apart; with
/// probability [`INFINITY_PROBABILITY`] one of them is replaced by ∞.
pub fn random_generic_tuple(
    seed: u64,
    count: usize,
    dims: &[usize],
    separation: f64,
) -> Result<Vec<ProductBoundaryPoint>> {
    sample_generic_tuple(&mut rng_from_seed(seed), count, dims, separation)
}

pub fn sample_generic_tuple<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    dims: &[usize],
    separation: f64,
) -> Result<Vec<ProductBoundaryPoint>> {
    if count < 2 {
        return Err(Error::InvalidArgument("tuple size must be >= 2"));
    }
    if !(separation > 0.0) {
        return Err(Error::InvalidArgument("separation must be positive"));
    }
    if dims.contains(&0) {
        return Err(Error::InvalidArgument("boundary dimension must be >= 1"));
    }
    let factors = dims
        .iter()
        .map(|&d| sample_factor(rng, count, d, separation))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..count)
        .map(|i| ProductBoundaryPoint::new(factors.iter().map(|f| f[i].clone()).collect()))
        .collect())
}

fn sample_factor<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    dim: usize,
    separation: f64,
) -> Result<Vec<BoundaryPoint>> {
    let half_side = SAMPLE_RADIUS / (dim as f64).sqrt();
    for _ in 0..MAX_SAMPLING_ATTEMPTS {
        let points: Vec<Vec<f64>> = (0..count)
            .map(|_| {
                (0..dim)
                    .map(|_| rng.random_range(-half_side..=half_side))
                    .collect()
            })
            .collect();
        let separated = (0..count).all(|i| {
            (i + 1..count).all(|j| distance(&points[i], &points[j]) >= separation)
        });
        let bounded = points.iter().all(|p| norm(p) <= SAMPLE_RADIUS);
        let infinity_at = if rng.random_bool(INFINITY_PROBABILITY) {
            Some(rng.random_range(0..count))
        } else {
            None
        };
        if separated && bounded {
            return Ok(points
                .into_iter()
                .enumerate()
                .map(|(i, p)| {
                    if Some(i) == infinity_at {
                        BoundaryPoint::Infinity
                    } else {
                        BoundaryPoint::Finite(p)
                    }
                })
                .collect());
        }
    }
    Err(Error::SamplingFailure {
        attempts: MAX_SAMPLING_ATTEMPTS,
    })
}

/// A seeded word of 3 to 6 generators acting on `R^dim ∪ {∞}`.
///
/// Dilations are drawn from `[0.2, 5]`, translation entries from `[-2, 2]`,
/// rotations by orthonormalizing a Gaussian matrix. With probability 1/2 the
/// word contains at least one inversion, otherwise none.
pub fn random_mobius(seed: u64, dim: usize) -> Result<MobiusMap> {
    sample_mobius(&mut rng_from_seed(seed), dim)
}

pub fn sample_mobius<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Result<MobiusMap> {
    if dim == 0 {
        return Err(Error::InvalidArgument("boundary dimension must be >= 1"));
    }
    let len = rng.random_range(3..=6);
    let with_inversion = rng.random_bool(0.5);
    let kinds = if with_inversion { 4 } else { 3 };
    let mut generators: Vec<Generator> = (0..len)
        .map(|_| match rng.random_range(0..kinds) {
            0 => Generator::Translate((0..dim).map(|_| rng.random_range(-2.0..=2.0)).collect()),
            1 => Generator::Dilate(rng.random_range(0.2..=5.0)),
            2 => Generator::Orthogonal(random_orthogonal(rng, dim)),
            _ => Generator::Invert,
        })
        .collect();
    if with_inversion && !generators.contains(&Generator::Invert) {
        let at = rng.random_range(0..len);
        generators[at] = Generator::Invert;
    }
    MobiusMap::new(dim, generators)
}

/// Gram–Schmidt (two passes) on the columns of a Gaussian matrix.
fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Vec<f64>> {
    loop {
        let mut cols: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| rng.sample(StandardNormal)).collect())
            .collect();
        let mut ok = true;
        for j in 0..dim {
            for _ in 0..2 {
                for k in 0..j {
                    let proj: f64 = (0..dim).map(|i| cols[j][i] * cols[k][i]).sum();
                    for i in 0..dim {
                        cols[j][i] -= proj * cols[k][i];
                    }
                }
            }
            let n = norm(&cols[j]);
            if n < 1e-8 {
                ok = false;
                break;
            }
            for x in &mut cols[j] {
                *x /= n;
            }
        }
        if ok {
            return (0..dim)
                .map(|i| (0..dim).map(|j| cols[j][i]).collect())
                .collect();
        }
    }
}
