//! Combinatorial classification toolkit for A-hypergeometric functions of
//! planar lattice point configurations.
//!
//! Everything is computed in exact integer/rational arithmetic: apex points
//! and signatures, resonance tests, unimodular triangulations, lattice
//! polygon censuses up to isomorphism, bounded-denominator parameter
//! searches, one-parameter family verification and the end-to-end
//! classification pipeline.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `ahg` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod census;
pub mod classifier;
pub mod config;
pub mod exact_math;
pub mod hypergeo;
pub mod named;
pub mod polytope;

pub use config::{AffineUnimodularMap, LatticePolygon, PointConfig};
pub use exact_math::{IntMatrix, Rational};
pub use hypergeo::{FamilyPattern, ParamVector, Verdict};
pub use polytope::{Cone, Triangulation};
