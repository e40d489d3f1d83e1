//! The longest element of the Weyl group and its action on the Cartan
//! subalgebra.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational, RationalMatrix, RationalVector};
use crate::root_system::RootSystem;

/// Basis in which [`LongestElementReport::action`] is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionBasis {
    SimpleRoots,
}

/// Dimensions `(s, t)` of the `+1` and `-1` eigenspaces of an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Signature {
    pub s: usize,
    pub t: usize,
}

impl Signature {
    /// Validating constructor for signed user input.
    pub fn new(s: i64, t: i64) -> Result<Self> {
        if s < 0 || t < 0 || s + t == 0 {
            return Err(Error::InvalidSignature { s, t });
        }
        Ok(Signature {
            s: s as usize,
            t: t as usize,
        })
    }

    pub fn rank(self) -> usize {
        self.s + self.t
    }

    pub fn is_minus_one(self) -> bool {
        self.s == 0
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;

    fn add(self, rhs: Signature) -> Signature {
        Signature {
            s: self.s + rhs.s,
            t: self.t + rhs.t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestElementReport {
    pub type_label: String,
    pub rank: usize,
    /// Reduced word, as zero-based simple-reflection indices. The element is
    /// `s_{word[k-1]} ... s_{word[0]}`; since `w0` is an involution the
    /// reversed word is also a reduced word for it.
    pub word: Vec<usize>,
    pub action: RationalMatrix,
    pub basis: ActionBasis,
    pub signature: Signature,
    pub minus_one: bool,
}

impl LongestElementReport {
    pub fn word_length(&self) -> usize {
        self.word.len()
    }

    /// The permutation `sigma` with `w0(a_i) = -a_{sigma(i)}`, if the action
    /// has that shape.
    pub fn simple_root_permutation(&self) -> Option<Vec<usize>> {
        let r = self.rank;
        let mut sigma = Vec::with_capacity(r);
        for j in 0..r {
            let col = self.action.column(j);
            let mut target = None;
            for (i, x) in col.0.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                if *x != int(-1) || target.is_some() {
                    return None;
                }
                target = Some(i);
            }
            sigma.push(target?);
        }
        let mut seen = vec![false; r];
        for &i in &sigma {
            if std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(sigma)
    }
}

/// Applies the word (first letter first) to an ambient vector.
pub fn apply_word(rs: &RootSystem, word: &[usize], v: &RationalVector) -> RationalVector {
    word.iter().fold(v.clone(), |acc, &i| rs.reflect_simple(i, &acc))
}

/// Walks from `-rho` to the dominant chamber, always reflecting in the
/// smallest-index simple root that still pairs negatively.
pub fn longest_element(rs: &RootSystem) -> LongestElementReport {
    let simple = rs.simple_roots();
    let rank = rs.rank();
    let mut v = rs.rho().neg();
    let mut word = Vec::with_capacity(rs.positive_root_count());
    let mut action = RationalMatrix::identity(rank);
    let pairings: Vec<Vec<_>> = (0..rank)
        .map(|i| (0..rank).map(|j| rs.simple_pairing(j, i)).collect())
        .collect();

    while let Some(i) = simple.iter().position(|a| v.dot(a).is_negative()) {
        v = rs.reflect_simple(i, &v);
        word.push(i);
        // s_i only changes row i: row_i -= Σ_j <a_j, coroot_i> row_j
        for col in 0..rank {
            let delta = (0..rank)
                .filter(|&j| !pairings[i][j].is_zero())
                .fold(Rational::zero(), |acc, j| acc + &pairings[i][j] * action.get(j, col));
            let x = action.get(i, col) - delta;
            action.set(i, col, x);
        }
    }

    let trace = action
        .trace()
        .to_integer()
        .to_i64()
        .expect("trace of a signed permutation matrix is small");
    let signature = signature_from_trace(rank, trace);
    LongestElementReport {
        type_label: rs.label(),
        rank,
        word,
        action,
        basis: ActionBasis::SimpleRoots,
        signature,
        minus_one: signature.s == 0,
    }
}

fn signature_from_trace(rank: usize, trace: i64) -> Signature {
    let r = rank as i64;
    debug_assert_eq!((r + trace) % 2, 0);
    Signature {
        s: ((r + trace) / 2) as usize,
        t: ((r - trace) / 2) as usize,
    }
}

/// Signature from the trace of the action, after checking that the action is
/// an involution.
pub fn involution_signature(rep: &LongestElementReport) -> Result<Signature> {
    signature_of_involution(&rep.action)
}

pub fn signature_of_involution(m: &RationalMatrix) -> Result<Signature> {
    if !(m * m).is_identity() {
        return Err(Error::NotInvolution);
    }
    let trace = m.trace();
    if !trace.is_integer() {
        return Err(Error::NotInvolution);
    }
    let trace = trace.to_integer().to_i64().ok_or(Error::NotInvolution)?;
    let r = m.size() as i64;
    if (r + trace) % 2 != 0 || trace.abs() > r {
        return Err(Error::NotInvolution);
    }
    Ok(signature_from_trace(m.size(), trace))
}

pub fn is_minus_one(rep: &LongestElementReport) -> bool {
    rep.signature.s == 0
}
