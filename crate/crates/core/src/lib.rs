//! Graded (co)homology of connected graded algebras over prime fields:
//! bar-complex homology, quadratic duality, Koszulity criteria and the
//! cohomology algebras of elementary-type pro-p groups.

pub mod criteria;
pub mod error;
pub mod fplinalg;
pub mod graded;
pub mod groups;
pub mod homology;
pub mod monomial;
pub mod quadratic;

pub use error::{Error, Result};
