//! Exact cyclotomic matrix groups in dimensions 3 and 4: closure, character
//! theory, semi-invariants, action classification and weak-exceptionality
//! verdicts for the quotient singularities `C^N / G`.
//!
//! Linear algebra is generic over [`Field`]; the aliases below fix the
//! scalar to the two fields used in practice.

pub mod cyclotomic;
pub mod error;
pub mod linalg;
pub mod matgroup;
pub mod repthy;
pub mod classify;
pub mod catalog;

pub use cyclotomic::{parse_cyclotomic, Cyclotomic};
pub use error::{Error, Result};
pub use linalg::{Field, IntMatrix, Matrix, Subspace};

use num_rational::BigRational;

pub type CycMatrix = Matrix<Cyclotomic>;
pub type CycSubspace = Subspace<Cyclotomic>;
pub type RatMatrix = Matrix<BigRational>;
pub type RatSubspace = Subspace<BigRational>;
