//! Numerical toolkit for the holomorphic isometry group PU(2,1) of the
//! complex hyperbolic plane.
//!
//! The crate classifies isometries from their SU(2,1) lifts, constructs
//! complex reflections and normalized triangles of complex lines, decides
//! and constructs decompositions of elliptic triples into products of
//! reflections, parameterizes the corresponding relative character-variety
//! components by a rotation angle and an angular invariant, computes
//! reducible skeletons of the momentum map in half-square coordinates, and
//! charts triangle-group representation components, with CSV/SVG emitters
//! for the standard figures.

pub mod complex3;
pub mod cubic;
pub mod decompose;
pub mod error;
pub mod figures;
pub mod hermitian;
pub mod isometry;
pub mod momentum;
pub mod reflections;
pub mod sampling;
pub mod tol;
pub mod trace_geometry;
pub mod triangle_groups;

pub use complex3::{CMat3, CVec3};
pub use error::{Error, Result};
pub use hermitian::{HermitianForm, PointType};
pub use isometry::{AnglePair, IsometryClass, SU21Element};
