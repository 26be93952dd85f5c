//! Exact finite-dimensional models for Sasakian nilmanifolds and flat
//! bundles over them, with coefficients in the Gaussian rationals.

pub mod complex;
pub mod dgla;
pub mod error;
pub mod matrix;
pub mod operator;
pub mod scalar;
pub mod subspace;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{GaussianRational, Rational};
pub use subspace::Subspace;
