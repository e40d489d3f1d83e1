//! Exact Weyl-group and exterior-algebra bookkeeping for the kernel of the
//! evaluation map from boundary cohomology to group cohomology, together with a
//! seeded numerical harness for the cross-ratio cocycles on products of
//! hyperbolic boundaries.

pub mod boundary;
pub mod cocycles;
pub mod cohomology;
pub mod error;
pub mod rational;
pub mod root_system;
pub mod verify;
pub mod weyl;

pub use boundary::{BoundaryPoint, Generator, MobiusMap, ProductBoundaryPoint, ProductMobius};
pub use cocycles::{alternation, coboundary, CochainEvaluator};
pub use cohomology::{
    corollary_even_degree_check, invariant_dims, kernel_table, spectral_pages, torus_dims,
    CohomologyTable, InvariantDims, PageEntry, PageLabel, SpectralPage,
};
pub use error::{Error, Result};
pub use rational::{Rational, RationalMatrix, RationalVector};
pub use root_system::{build_root_system, reflect, Family, RootSystem, SimpleType};
pub use verify::{verify, Check, VerificationReport};
pub use weyl::{involution_signature, is_minus_one, longest_element, LongestElementReport, Signature};
