//! Finite Coxeter groups as permutation groups on their roots.

mod chain;
mod classes;
mod element;
mod roots;
mod types;

pub use chain::{check_guard, GroupElements, ParabolicChain, DEFAULT_GUARD};
pub use classes::{
    eigenspace_decomposition, involution_classes, is_special_involution, shapes, Conjugacy,
    Eigenspaces, InvolutionClass, Shape,
};
pub use element::GroupElement;
pub use roots::{FactorBlock, RootSystem};
pub use types::{CoxeterType, Factor};
