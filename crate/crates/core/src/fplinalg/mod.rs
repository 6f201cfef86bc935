//! Exact linear algebra over prime fields.

mod bits;
mod field;
mod matrix;
pub mod sparse;
mod subspace;

pub use field::PrimeField;
pub use matrix::{FpMatrix, Rref};
pub use sparse::SparseVec;
pub use subspace::{annihilator, quotient_dim, Subspace};
