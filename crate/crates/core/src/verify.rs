//! Seeded Monte-Carlo checks of the cocycle identities, alternation
//! properties and Möbius invariance.
//!
//! Each trial draws its own RNG from `(seed, trial, attempt)`, so trials run
//! in parallel and the report only depends on the seed and trial count.
//! Trials whose configuration is badly conditioned are redrawn and counted as
//! rejected.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boundary::{
    cross_ratio_unchecked, finite_distance, sample_generic_tuple, sample_mobius,
    BoundaryPoint, ProductBoundaryPoint, ProductMobius,
};
use crate::cocycles::{faces, signed_terms, CochainEvaluator};
use crate::error::{Error, Result};

/// Minimum pairwise distance of sampled points in each factor.
pub const SAMPLE_SEPARATION: f64 = 0.1;
/// Cross-ratios outside this range make a trial ill-conditioned.
pub const CROSS_RATIO_RANGE: (f64, f64) = (1e-6, 1e6);
/// Minimum pairwise distance after a Möbius transformation.
pub const MIN_TRANSFORMED_DISTANCE: f64 = 1e-6;
/// Redraws allowed per trial before giving up.
pub const MAX_TRIAL_ATTEMPTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    CocycleC3,
    CocycleC4,
    AltC3Fixed,
    AltC4Zero,
    InvarianceC3,
    InvarianceC4,
    CrossratioInvariance,
    ReversalC4,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::CocycleC3,
        Check::CocycleC4,
        Check::AltC3Fixed,
        Check::AltC4Zero,
        Check::InvarianceC3,
        Check::InvarianceC4,
        Check::CrossratioInvariance,
        Check::ReversalC4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::CocycleC3 => "cocycle_c3",
            Check::CocycleC4 => "cocycle_c4",
            Check::AltC3Fixed => "alt_c3_fixed",
            Check::AltC4Zero => "alt_c4_zero",
            Check::InvarianceC3 => "invariance_c3",
            Check::InvarianceC4 => "invariance_c4",
            Check::CrossratioInvariance => "crossratio_invariance",
            Check::ReversalC4 => "reversal_c4",
        }
    }

    /// Number of product points drawn per trial.
    fn tuple_size(self) -> usize {
        match self {
            Check::CocycleC3 => 5,
            Check::CocycleC4 => 6,
            Check::AltC3Fixed | Check::InvarianceC3 | Check::CrossratioInvariance => 4,
            Check::AltC4Zero | Check::InvarianceC4 | Check::ReversalC4 => 5,
        }
    }

    fn needs_mobius(self) -> bool {
        matches!(
            self,
            Check::InvarianceC3 | Check::InvarianceC4 | Check::CrossratioInvariance
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub trials: usize,
    pub rejected: usize,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
}

impl VerificationReport {
    pub fn rejected_fraction(&self) -> f64 {
        self.rejected as f64 / (self.trials + self.rejected) as f64
    }
}

/// Residual of one trial: the raw discrepancy and its normalized form.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Residual {
    abs: f64,
    rel: f64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of attempt `attempt` of trial `trial`.
pub fn trial_seed(seed: u64, trial: u64, attempt: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ attempt)
}

/// Runs `trials` accepted trials of `check` on `∂H^n × ∂H^m` with
/// `dims = (n, m)`.
///
/// A trial passes when its normalized residual is at most `tol`. Since every
/// normalization divides by a quantity `>= 1`, the normalized residual never
/// exceeds the absolute one.
pub fn verify(
    check: Check,
    dims: (usize, usize),
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    if dims.0 < 2 || dims.1 < 2 {
        return Err(Error::InvalidArgument("hyperbolic dimensions must be >= 2"));
    }
    let boundary_dims = [dims.0 - 1, dims.1 - 1];

    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|trial| run_trial(check, &boundary_dims, seed, trial))
        .collect::<Result<Vec<_>>>()?;

    let mut rejected = 0;
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    for (residual, rejections) in outcomes {
        rejected += rejections;
        max_abs = max_abs.max(residual.abs);
        max_rel = max_rel.max(residual.rel);
    }
    Ok(VerificationReport {
        check_name: check.name().to_string(),
        trials,
        rejected,
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        tolerance: tol,
        pass: max_rel <= tol,
        seed,
    })
}

fn run_trial(check: Check, dims: &[usize], seed: u64, trial: u64) -> Result<(Residual, usize)> {
    for attempt in 0..MAX_TRIAL_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial, attempt as u64));
        let tuple = sample_generic_tuple(&mut rng, check.tuple_size(), dims, SAMPLE_SEPARATION)?;
        let mobius = if check.needs_mobius() {
            Some(ProductMobius(
                dims.iter()
                    .map(|&d| sample_mobius(&mut rng, d))
                    .collect::<Result<_>>()?,
            ))
        } else {
            None
        };
        let moved = mobius.as_ref().map(|g| g.apply_all(&tuple));

        if !well_conditioned(&tuple) || moved.as_deref().is_some_and(|m| !transformed_ok(m)) {
            continue;
        }
        match evaluate(check, &tuple, moved.as_deref()) {
            Ok(residual) if residual.abs.is_finite() => return Ok((residual, attempt)),
            Ok(_) | Err(Error::DegenerateTuple(..)) | Err(Error::MultipleInfinities) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SamplingFailure {
        attempts: MAX_TRIAL_ATTEMPTS,
    })
}

fn factor_points(tuple: &[ProductBoundaryPoint], f: usize) -> Vec<&BoundaryPoint> {
    tuple.iter().map(|p| p.factor(f)).collect()
}

/// Every cross-ratio of four distinct entries lies in [`CROSS_RATIO_RANGE`].
fn well_conditioned(tuple: &[ProductBoundaryPoint]) -> bool {
    let n = tuple.len();
    let (lo, hi) = CROSS_RATIO_RANGE;
    (0..tuple[0].components.len()).all(|f| {
        let z = factor_points(tuple, f);
        if z.iter().filter(|p| p.is_infinity()).count() > 1 {
            return false;
        }
        // Cross-ratios of a 4-set under reordering take the values b, 1/b,
        // and those of one other pairing; ordered quadruples cover them all.
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    (0..n).all(|l| {
                        let distinct = i != j && i != k && i != l && j != k && j != l && k != l;
                        !distinct || {
                            let b = cross_ratio_unchecked(z[i], z[j], z[k], z[l]);
                            b.is_finite() && (lo..=hi).contains(&b)
                        }
                    })
                })
            })
        })
    })
}

fn transformed_ok(tuple: &[ProductBoundaryPoint]) -> bool {
    let separated = (0..tuple[0].components.len()).all(|f| {
        let z = factor_points(tuple, f);
        (0..z.len()).all(|i| {
            (i + 1..z.len()).all(|j| {
                finite_distance(z[i], z[j]).is_none_or(|d| d >= MIN_TRANSFORMED_DISTANCE)
            })
        })
    });
    separated && well_conditioned(tuple)
}

fn evaluate(
    check: Check,
    tuple: &[ProductBoundaryPoint],
    moved: Option<&[ProductBoundaryPoint]>,
) -> Result<Residual> {
    let c3 = CochainEvaluator::c3();
    let c4 = CochainEvaluator::c4();
    let normalized = |abs: f64, scale: f64| Residual {
        abs,
        rel: abs / (scale + 1.0),
    };
    match check {
        Check::CocycleC3 | Check::CocycleC4 => {
            let f = if check == Check::CocycleC3 { &c3 } else { &c4 };
            let face_values = faces(f, tuple)?;
            let delta: f64 = face_values
                .iter()
                .enumerate()
                .map(|(i, v)| if i % 2 == 0 { *v } else { -v })
                .sum();
            let scale: f64 = face_values.iter().map(|v| v.abs()).sum();
            Ok(normalized(delta.abs(), scale))
        }
        Check::AltC3Fixed | Check::AltC4Zero => {
            let f = if check == Check::AltC3Fixed { &c3 } else { &c4 };
            let terms = signed_terms(f, tuple)?;
            let alt = terms.iter().sum::<f64>() / terms.len() as f64;
            let expected = if check == Check::AltC3Fixed {
                f.eval(tuple)?
            } else {
                0.0
            };
            let scale = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            Ok(normalized((alt - expected).abs(), scale))
        }
        Check::InvarianceC3 | Check::InvarianceC4 => {
            let f = if check == Check::InvarianceC3 { &c3 } else { &c4 };
            let moved = moved.expect("invariance checks carry a transformed tuple");
            let before = f.eval(tuple)?;
            let after = f.eval(moved)?;
            Ok(normalized((after - before).abs(), before.abs()))
        }
        Check::CrossratioInvariance => {
            let moved = moved.expect("invariance checks carry a transformed tuple");
            let mut worst = Residual { abs: 0.0, rel: 0.0 };
            for f in 0..tuple[0].components.len() {
                let x = factor_points(tuple, f);
                let y = factor_points(moved, f);
                crate::boundary::check_generic(&x, 0.0)?;
                crate::boundary::check_generic(&y, 0.0)?;
                let before = cross_ratio_unchecked(x[0], x[1], x[2], x[3]);
                let after = cross_ratio_unchecked(y[0], y[1], y[2], y[3]);
                let abs = (after - before).abs();
                worst.abs = worst.abs.max(abs);
                worst.rel = worst.rel.max(abs / before);
            }
            Ok(worst)
        }
        Check::ReversalC4 => {
            let value = c4.eval(tuple)?;
            let reversed: Vec<_> = tuple.iter().rev().cloned().collect();
            let flipped = c4.eval(&reversed)?;
            Ok(normalized((flipped + value).abs(), value.abs()))
        }
    }
}
