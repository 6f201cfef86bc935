//! Truncated connected graded algebras, graded right modules and the
//! constructions built from them.

mod algebra;
mod module;
mod ops;

pub use algebra::GradedAlgebra;
pub use module::GradedModule;
pub use ops::{
    direct_sum, free_product_algebra, quotient_algebra, shift, tensor_algebra, tensor_module,
    tensor_module_over, Submodule,
};
