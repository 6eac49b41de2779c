//! Exact computations in the Orlik-Solomon algebra of a finite Coxeter
//! group: the broken-circuit basis as a compressed graph, rewriting into
//! that basis, averaging over the group, and the invariant basis built
//! from special involutions.

pub mod algebra;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod matroid;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
