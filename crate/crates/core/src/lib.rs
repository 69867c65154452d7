//! Dancing path geometries.
//!
//! Two non-incident (point, path) pairs *dance* when a single path of the
//! geometry runs through both points and through the intersection of the two
//! paths. This crate computes that condition, its infinitesimal (null cone)
//! version, and the curvature of the neutral-signature metrics it produces,
//! for three settings:
//!
//! * points and lines of the real projective plane ([`flat`]), where the
//!   null cone is quadratic and the metric is anti-self-dual Einstein
//!   ([`curvature`], [`connection`]);
//! * origin-centred ellipses of area π ([`ellipse`]), where the cone is a
//!   sextic;
//! * points and conics ([`conic`]), giving a degenerate conformal structure
//!   on a seven-manifold.
//!
//! [`verify`] bundles the numerical certification suites used by the CLI.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod conic;
pub mod connection;
pub mod curvature;
pub mod ellipse;
pub mod error;
pub mod exact;
pub mod flat;
pub mod jet;
pub mod ode;
pub mod projective;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
pub use jet::{Dual, Jet2, Scalar};
pub use projective::{CHomVec3, Conic3, HomVec3};
