//! Exact analysis of s-distance sets in Euclidean space.
//!
//! The crate computes the integrality invariants `k_i` of a configuration's
//! distance spectrum, the cardinality thresholds under which those invariants
//! are forced to be integers, and exact rank certificates for the linear
//! independence statements behind those thresholds. Every quantity lives in
//! ℚ or a single real quadratic field ℚ(√m); floating point only appears in
//! [`invariants::recover_distances`] and in decimal renderings.

pub mod catalog;
pub mod formats;
pub mod error;
pub mod field;
pub mod geometry;
pub mod invariants;
pub mod linalg;
pub mod polyspace;
pub mod suites;

pub use error::{Error, Result};
pub use field::{QuadExt, Rational};
pub use geometry::{Configuration, DistanceSpectrum, PointSet, SquaredDistanceMatrix};
pub use invariants::InvariantReport;
pub use linalg::{ExactMatrix, Inertia};
pub use polyspace::RankCertificate;
