//! Exact computations with two-term complexes of projectives over
//! finite-dimensional quiver algebras: torsion pairs, tilting verdicts,
//! endomorphism algebras, and the induced module-category equivalences,
//! with a brute-force enumeration oracle behind every bounded certificate.
//!
//! See the guide in `book/` for a narrative tour; `src/bin` provides the
//! `tilt` command-line interface over the `.alg` text format.

pub mod algebra;
pub mod basisalg;
pub mod cli;
pub mod complex;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod format;
pub mod matrix;
pub mod module;
pub mod report;
pub mod rng;
pub mod tilting;
pub mod torsion;

#[cfg(doctest)]
mod book;

pub use error::Error;
pub use field::{FieldTag, Scalar};
pub use matrix::Matrix;
