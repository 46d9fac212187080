//! Positively decorated simplicial complexes and Viro polynomial systems.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: exact rational matrices, minors, kernels and chirotopes.
//! - [`complex`]: pure simplicial complexes, dual graphs, colorings and
//!   decoration checks.
//! - [`families`]: cyclic, order and cross polytope triangulations, facet
//!   counting and the multilinear totally positive construction.
//! - [`viro`]: height functions, regularity certificates and truncated
//!   per-simplex solutions.
//! - [`numerics`]: extended precision evaluation in log coordinates, Newton
//!   refinement and certified positive root counts.
//! - [`completion`]: decorations of non-balanced complexes through low-rank
//!   positive matrix completion.
//!
//! Every decoration claim is decided in exact rational arithmetic. Floating
//! point only enters when counting roots of concrete systems.

pub mod commands;
pub mod complex;
pub mod completion;
mod error;
pub mod families;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod numerics;
pub mod reproduce;
pub mod viro;

pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, Sign, SignVector};
