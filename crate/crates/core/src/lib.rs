//! Exact-arithmetic workbench for higher-order causal structure.
//!
//! The layers build up from rational scalars and dense linear algebra to
//! affine subspaces, base-category models (classical and quantum), causal
//! sets with their type constructors, a difference completion for morphism
//! cancellation, a small type DSL, JSON interchange, and a randomized
//! theorem-checking suite.

pub mod affine;
pub mod causal;
pub mod dsl;
pub mod jsonio;
pub mod linalg;
pub mod model;
pub mod rational;
pub mod subclosure;
pub mod suite;
