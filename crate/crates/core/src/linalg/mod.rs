//! Exact linear algebra over a [`Field`], plus integer Smith normal form.

pub mod echelon;
mod field;
mod matrix;
mod smith;
mod subspace;

pub use field::Field;
pub use matrix::Matrix;
pub use smith::{smith_normal_form, IntMatrix, Lattice, SmithForm};
pub use subspace::{dot_product, eigenspace, eigenvalue_of, kernel, rank, Subspace};
