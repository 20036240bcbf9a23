//! Spherical parameterization of genus-zero surfaces.
//!
//! The crate computes maps from closed genus-zero triangle meshes to the unit
//! sphere along a one-parameter family: conformal at one end (dynamic Yamabe
//! flow on two halves, recombined by conformal welding), area-preserving at
//! the other (semi-discrete optimal mass transport on the plane), with
//! measured interpolation in between. Distortion of any map is quantified by
//! per-element area and angle ratios and per-face Jacobian statistics.

pub mod flow;
pub mod mesh;
pub mod segment;
pub mod shapes;
pub mod sparse;
pub mod weld;
