//! Exact-arithmetic umbral calculus and algebraic combinatorics.
//!
//! The crate provides, in dependency order: arbitrary-precision rationals
//! and graded polynomials (the universal coefficient ring), integer
//! partitions, truncated power series with composition and compositional
//! inverse, the symmetric-function ring on the complete homogeneous
//! generators, an umbral engine (moment sequences, the evaluation
//! functional, auxiliary umbrae), parking-function enumeration with volume
//! polynomials and Abel polynomials, and noncrossing-partition lattices
//! with chains and flag vectors.
//!
//! Everything is exact: no floating point appears anywhere, and every
//! identity the test suite checks is an equality of rationals or of
//! polynomials with rational coefficients.

pub mod error;
pub mod noncrossing;
pub mod parking;
pub mod partitions;
pub mod poly;
pub mod rational;
pub mod series;
pub mod symfunc;
pub mod umbral;

pub use error::{Error, Result};
pub use noncrossing::{FlagVectors, Ground, NCChain, NcKind, SetPartition};
pub use parking::{ParkingKind, TypeAggregate, VolumeKind, VolumeMethod};
pub use partitions::{add_part, enumerate_partitions, falling_factorial, Partition};
pub use poly::{Family, GradedPoly, Monomial};
pub use rational::Rational;
pub use series::TruncSeries;
pub use symfunc::SymFunc;
pub use umbral::{MomentSeq, SpecialKind, Umbra, UmbraRegistry, UmbralExpr};
