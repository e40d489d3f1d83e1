//! Pointwise cochains on products of hyperbolic boundaries: alternation, the
//! homogeneous coboundary, and the two cross-ratio cocycles on
//! `(∂H^n × ∂H^m)^{p+1}`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;

use crate::boundary::{check_generic, cross_ratio_unchecked, BoundaryPoint, ProductBoundaryPoint};
use crate::error::{Error, Result};

/// Largest degree accepted by [`alternation`] (`8! = 40320` terms).
pub const MAX_ALT_DEGREE: usize = 7;

type EvalFn = dyn Fn(&[ProductBoundaryPoint]) -> Result<f64> + Send + Sync;

/// A degree-`p` cochain, evaluated pointwise on generic `(p+1)`-tuples.
#[derive(Clone)]
pub struct CochainEvaluator {
    degree: usize,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for CochainEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CochainEvaluator")
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl CochainEvaluator {
    pub fn new<F>(degree: usize, eval: F) -> Self
    where
        F: Fn(&[ProductBoundaryPoint]) -> Result<f64> + Send + Sync + 'static,
    {
        CochainEvaluator {
            degree,
            eval: Arc::new(eval),
        }
    }

    pub fn constant(degree: usize, value: f64) -> Self {
        Self::new(degree, move |_| Ok(value))
    }

    /// The alternating degree-3 cocycle.
    pub fn c3() -> Self {
        Self::new(3, c3)
    }

    /// The non-alternating degree-4 cocycle.
    pub fn c4() -> Self {
        Self::new(4, c4)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn arity(&self) -> usize {
        self.degree + 1
    }

    pub fn eval(&self, tuple: &[ProductBoundaryPoint]) -> Result<f64> {
        if tuple.len() != self.arity() {
            return Err(Error::Arity {
                degree: self.degree,
                expected: self.arity(),
                got: tuple.len(),
            });
        }
        (self.eval)(tuple)
    }

    /// `self - other`, pointwise.
    pub fn minus(&self, other: &CochainEvaluator) -> Result<CochainEvaluator> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(Self::new(self.degree, move |t| Ok(a.eval(t)? - b.eval(t)?)))
    }
}

type SignedPermutation = (Vec<usize>, f64);

/// Permutations of `0..n` with their signs.
pub fn signed_permutations(n: usize) -> &'static [SignedPermutation] {
    static TABLES: OnceLock<Vec<Vec<SignedPermutation>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=MAX_ALT_DEGREE + 1)
            .map(|n| {
                (0..n)
                    .permutations(n)
                    .map(|perm| {
                        let inversions = (0..n)
                            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                            .filter(|&(i, j)| perm[i] > perm[j])
                            .count();
                        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                        (perm, sign)
                    })
                    .collect()
            })
            .collect()
    });
    &tables[n]
}

/// `sign(σ) f(x_σ(0), ..., x_σ(p))` for every permutation `σ`.
pub fn signed_terms(f: &CochainEvaluator, tuple: &[ProductBoundaryPoint]) -> Result<Vec<f64>> {
    if f.degree > MAX_ALT_DEGREE {
        return Err(Error::DegreeTooLarge(f.degree));
    }
    if tuple.len() != f.arity() {
        return Err(Error::Arity {
            degree: f.degree,
            expected: f.arity(),
            got: tuple.len(),
        });
    }
    let mut permuted = tuple.to_vec();
    signed_permutations(f.arity())
        .iter()
        .map(|(perm, sign)| {
            for (slot, &src) in permuted.iter_mut().zip(perm) {
                slot.clone_from(&tuple[src]);
            }
            Ok(sign * f.eval(&permuted)?)
        })
        .collect()
}

/// Signed average over all reorderings of the arguments.
pub fn alternation(f: &CochainEvaluator) -> Result<CochainEvaluator> {
    if f.degree > MAX_ALT_DEGREE {
        return Err(Error::DegreeTooLarge(f.degree));
    }
    let inner = f.clone();
    Ok(CochainEvaluator::new(f.degree, move |t| {
        let terms = signed_terms(&inner, t)?;
        Ok(terms.iter().sum::<f64>() / terms.len() as f64)
    }))
}

/// Face values `f(x_0, ..., x̂_i, ..., x_{p+1})`.
pub fn faces(f: &CochainEvaluator, tuple: &[ProductBoundaryPoint]) -> Result<Vec<f64>> {
    if tuple.len() != f.arity() + 1 {
        return Err(Error::Arity {
            degree: f.degree + 1,
            expected: f.arity() + 1,
            got: tuple.len(),
        });
    }
    (0..tuple.len())
        .map(|i| {
            let face: Vec<_> = tuple
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            f.eval(&face)
        })
        .collect()
}

/// `(δf)(x_0, ..., x_{p+1}) = Σ_i (-1)^i f(..., x̂_i, ...)`.
pub fn coboundary(f: &CochainEvaluator) -> CochainEvaluator {
    let inner = f.clone();
    CochainEvaluator::new(f.degree + 1, move |t| {
        Ok(faces(&inner, t)?
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { *v } else { -v })
            .sum())
    })
}

/// Splits a tuple of product points into its two factor tuples, checking that
/// each is generic.
fn split_factors(t: &[ProductBoundaryPoint]) -> Result<(Vec<&BoundaryPoint>, Vec<&BoundaryPoint>)> {
    for p in t {
        if p.components.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: p.components.len(),
            });
        }
    }
    let xs: Vec<_> = t.iter().map(|p| p.factor(0)).collect();
    let ys: Vec<_> = t.iter().map(|p| p.factor(1)).collect();
    check_generic(&xs, 0.0)?;
    check_generic(&ys, 0.0)?;
    Ok((xs, ys))
}

fn log_b(z: &[&BoundaryPoint], idx: [usize; 4]) -> f64 {
    cross_ratio_unchecked(z[idx[0]], z[idx[1]], z[idx[2]], z[idx[3]]).ln()
}

fn det2(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a * d - b * c
}

/// `det [[log b(x0,x1,x2,x3), log b(x1,x2,x3,x0)], [same for y]]`.
pub fn c3(t: &[ProductBoundaryPoint]) -> Result<f64> {
    if t.len() != 4 {
        return Err(Error::Arity {
            degree: 3,
            expected: 4,
            got: t.len(),
        });
    }
    let (x, y) = split_factors(t)?;
    let (w0, w1) = ([0, 1, 2, 3], [1, 2, 3, 0]);
    Ok(det2(log_b(&x, w0), log_b(&x, w1), log_b(&y, w0), log_b(&y, w1)))
}

/// `det [[log b(x0,x1,x2,x3), log b(x1,x2,x3,x4)], [same for y]]`.
pub fn c4(t: &[ProductBoundaryPoint]) -> Result<f64> {
    if t.len() != 5 {
        return Err(Error::Arity {
            degree: 4,
            expected: 5,
            got: t.len(),
        });
    }
    let (x, y) = split_factors(t)?;
    let (w0, w1) = ([0, 1, 2, 3], [1, 2, 3, 4]);
    Ok(det2(log_b(&x, w0), log_b(&x, w1), log_b(&y, w0), log_b(&y, w1)))
}
