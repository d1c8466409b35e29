//! Numerical laboratory for generalized matrix functions and the operator
//! inequalities built from them.
//!
//! The crate provides dense complex matrices generic over the underlying
//! real float, permutation groups with their characters, the classical
//! scalar functionals (determinant, permanent, character-weighted
//! permutation sums, spectral symmetric functions), tensor / exterior /
//! symmetric matrix powers, block partial traces and blockwise functional
//! maps, a Hermitian eigensolver with a calibrated positive-semidefinite
//! verdict, randomized verification harnesses for scalar and Loewner-order
//! superadditivity inequalities, and the angle geometry of vector triples.
//!
//! Everything is deterministic under an explicit seed, and every random
//! suite reports per-trial margins so that failures can be replayed.

pub mod block;
pub mod character;
pub mod comb;
pub mod eigen;
pub mod error;
pub mod functionals;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod matrix;
pub mod multilinear;
pub mod perm;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex;

/// Dense complex matrix over `f64` parts.
pub type Matrix64 = matrix::ComplexMatrix<f64>;
/// Complex vector over `f64` parts.
pub type Vector64 = Vec<num_complex::Complex<f64>>;
/// Block matrix over `f64` parts.
pub type Block64 = block::BlockMatrix<f64>;
/// Positive-semidefiniteness verdict over `f64`.
pub type Verdict64 = eigen::LoewnerVerdict<f64>;
/// Scalar functional over `f64` parts.
pub type Functional64 = functionals::Functional<f64>;
