//! Differential BKK-type bounds: differential polynomials over `Q(t)`, exact
//! lattice polytope geometry, mixed volumes, and the resulting degree bounds.

#![allow(clippy::needless_range_loop)]

pub mod applications;
pub mod bounds;
pub mod cli;
pub mod diffpoly;
pub mod error;
pub mod mixedvol;
pub mod polytope;
pub mod ratfunc;

pub use error::{Error, Result};
