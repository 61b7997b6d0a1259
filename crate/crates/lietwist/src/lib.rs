//! Exact-arithmetic root combinatorics for compact Lie groups: catalog root
//! systems of all simple types, parabolic data and their canonical gradings,
//! degree-3 fibrations of complex flag manifolds onto inner 3-symmetric
//! spaces, twistor integrability for invariant almost complex structures,
//! and the enumeration of the inner 3-symmetric cases.
//!
//! All coordinates live in the real quadratic field ℚ(√3) (the irrational
//! part only appears for G₂) and every comparison is exact, so set-level
//! identities such as `[m⁺,m⁺] ⊂ m⁻` are decided, never approximated.
//! Subspaces of the complexified algebra are torus-stable sums of root
//! spaces, encoded by root-id sets plus a Cartan flag; brackets reduce to
//! root addition.
//!
//! Core math is generic over the rational coefficient type via `num-traits`
//! (see [`scalar::Rational`]); the aliases below fix the default
//! arbitrary-precision instantiation.
//!
//! ```
//! use lietwist::{parse_subsystem, RootSystem, Base};
//! use lietwist::parabolic::{grade, ParabolicDatum};
//!
//! let rs = RootSystem::new("G2".parse().unwrap());
//! let base = lietwist::rootsys::validate_base(
//!     &rs,
//!     &lietwist::vector::parse_vector_list("[-3,1*r3],[2,0]").unwrap(),
//! )
//! .unwrap();
//! let datum = ParabolicDatum::new(&base, [1usize].into_iter().collect()).unwrap();
//! let grading = grade(&datum);
//! assert_eq!(grading.max_level(), 3);
//! ```

pub mod classify;
pub mod feasible;
pub mod fibration;
pub mod json;
pub mod parabolic;
pub mod rootsys;
pub mod scalar;
pub mod twistor;
pub mod vector;

use thiserror::Error as ThisError;

/// Default exact coefficient field: arbitrary-precision rationals.
pub type Rat = num_rational::BigRational;

/// Default scalar: an element of ℚ(√3) over [`Rat`].
pub type Scalar = scalar::Sqrt3<Rat>;

/// Default coordinate vector.
pub type Coords = vector::Vector<Rat>;

/// Root system over the default scalars.
pub type RootSystem = rootsys::RootSystem<Rat>;

/// Base over the default scalars.
pub type Base<'a> = rootsys::Base<'a, Rat>;

/// Weight-space set over the default scalars.
pub type WeightSpaceSet<'a> = fibration::WeightSpaceSet<'a, Rat>;

pub use rootsys::{RootId, SimpleType, TypeLabel};

/// Convenience: parse a `SimpleType` such as `"G2"` or `"A3"`.
pub fn parse_subsystem(s: &str) -> Result<SimpleType, Error> {
    s.parse()
}

/// Errors shared across the crate. Mathematical findings (failed
/// integrability, series mismatches) are reports, not errors; these are
/// contract violations on inputs.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("invalid simple type `{0}` (A1..A8, B2..B8, C2..C8, D4..D8, E6..E8, F4, G2)")]
    InvalidType(String),
    #[error("{0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("not a root of this system: {0}")]
    NotARoot(String),
    #[error("candidate base has {got} roots, rank is {expected}")]
    WrongBaseSize { expected: usize, got: usize },
    #[error("candidate base is linearly dependent")]
    DependentBase,
    #[error("not a base: root {witness} fails the same-sign integer condition")]
    NotABase { witness: String },
    #[error("vector is orthogonal to the root {0}")]
    NotRegular(String),
    #[error("subset index {index} out of range 1..={rank}")]
    SubsetIndex { index: usize, rank: usize },
    #[error("values belong to different root systems")]
    MismatchedSystems,
    #[error("not a partition of the root set: {0}")]
    NotAPartition(String),
    #[error("not a candidate simple system: {0}")]
    NotSimpleSystem(String),
    #[error("the Cartan subalgebra must lie in h: rank H = rank G is assumed")]
    NotEqualRank,
    #[error("h is not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("invalid twistor candidate: {0}")]
    InvalidCandidate(String),
    #[error("candidate enumeration too large: {count} candidates (guard is 2^16)")]
    TooManyCandidates { count: usize },
    #[error("grading has max level {max} ≥ 3: the flag manifold is not its own 3-symmetric base")]
    MaxLevelTooHigh { max: i64 },
    #[error("simple root {index} has mark {mark}, expected 3")]
    NotMark3 { index: usize, mark: i64 },
    #[error("rank {rank} too small for {context}")]
    RankTooSmall {
        context: &'static str,
        rank: usize,
    },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
