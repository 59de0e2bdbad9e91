//! Exact engine for generalized symmetries of regular normal parabolic geometries.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`] builds root data and the affine Weyl action,
//! * [`grading`] adds a subset of simple roots and the induced grading,
//! * [`kostant`] lists harmonic curvature components and their homogeneities,
//! * [`symsolve`] solves the eigenvalue equations and derives the sets Θ, Φ, Λ,
//! * [`extension`] analyses concrete homogeneous models given as extension data,
//! * [`emit`] renders table rows as text, JSON, CSV or LaTeX.
//!
//! All arithmetic is exact. Simple roots are indexed from 0 in the API and
//! printed from 1.

pub mod emit;
pub mod error;
pub mod extension;
pub mod grading;
pub mod kostant;
pub mod linalg;
pub mod rootsys;
pub mod snf;
pub mod symsolve;

pub use error::{Error, Result};
