use thiserror::Error;

/// Errors produced by the algebraic and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid simple type {family}{rank}: {reason}")]
    InvalidType {
        family: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("cannot parse type label {0:?}")]
    ParseType(String),
    #[error("empty factor list")]
    EmptyFactors,
    #[error("reflection in the zero vector")]
    ZeroRoot,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("action matrix is not an involution")]
    NotInvolution,
    #[error("invalid signature ({s}, {t})")]
    InvalidSignature { s: i64, t: i64 },
    #[error("degenerate tuple: points {0} and {1} coincide")]
    DegenerateTuple(usize, usize),
    #[error("more than one point at infinity")]
    MultipleInfinities,
    #[error("non-finite coordinate in boundary point")]
    NonFinite,
    #[error("invalid Möbius generator: {0}")]
    InvalidGenerator(&'static str),
    #[error("sampling failed after {attempts} attempts")]
    SamplingFailure { attempts: usize },
    #[error("alternation of degree {0} exceeds the supported maximum of 7")]
    DegreeTooLarge(usize),
    #[error("cochain of degree {degree} needs {expected} points, got {got}")]
    Arity {
        degree: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("invalid check: {0}")]
    InvalidCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
