//! Finite BL-algebras with internal state-operators.
//!
//! Algebras are stored as full operation tables over dense element indices.
//! On top of them the crate verifies operator axioms, enumerates every
//! operator of a class, computes filters, radicals and quotients, and works
//! with states in exact rational arithmetic.

pub mod algebra;
pub mod builtin;
pub mod cli;
pub mod constructors;
pub mod document;
pub mod filters;
pub mod operators;
pub mod report;
pub mod set;
pub mod states;
pub mod suite;

pub use algebra::{AlgebraError, BlAlgebra, ElementId};
pub use filters::Filter;
pub use operators::{OperatorClass, StateOperator};
