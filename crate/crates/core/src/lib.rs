//! Exact homological algebra over finite-dimensional quiver algebras: bounded
//! complexes, dg-endomorphism algebras, semifree resolutions, and checks for
//! silting and tilting complexes together with the derived equivalences they
//! induce.

pub mod algebra;
pub mod complex;
pub mod dg;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod hom;
pub mod instance;
pub mod matrix;
pub mod module;
pub mod semifree;
pub mod silting;
pub mod tensor;
pub mod verifier;
#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
