//! Central tolerance constants.
//!
//! Every threshold used by the library is collected here so that numerical
//! bands are consistent between construction-time validation and the tests.

/// Hermitian symmetry of a form matrix (entrywise).
pub const HERMITIAN: f64 = 1e-12;

/// Sign band for the type trichotomy of a vector, applied after the vector
/// has been rescaled to maximum component modulus 1.
pub const POINT_TYPE: f64 = 1e-10;

/// Band around zero for the trace discriminant separating regular elliptic
/// from loxodromic elements.
pub const DELTOID: f64 = 1e-9;

/// Unit-determinant and form-preservation checks on SU(2,1) lifts.
pub const SU_LIFT: f64 = 1e-10;

/// Eigenpair residual bound, relative to the matrix norm.
pub const EIGEN_RESIDUAL: f64 = 1e-9;

/// Two eigenvalues closer than this (relative to the spectral scale) are
/// treated as a repeated eigenvalue.
pub const EIGEN_CLUSTER: f64 = 1e-7;

/// Rank decisions in 3x3 elimination, relative to the largest pivot.
pub const RANK: f64 = 1e-8;

/// Decomposability test on the cubed product of preferred eigenvalues.
pub const DECOMPOSABILITY: f64 = 1e-8;

/// Product identity ABC = omega*I for elliptic triples.
pub const TRIPLE_PRODUCT: f64 = 1e-9;

/// Membership tolerance on the reducible skeleton, in radians of the
/// half-square coordinates.
pub const SKELETON: f64 = 1e-7;

/// Angle comparisons modulo 2*pi.
pub const ANGLE: f64 = 1e-9;
