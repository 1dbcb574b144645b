//! Finite models of degenerate categories and bicategories.
//!
//! A category with one object is a monoid; a bicategory with one object and
//! one 1-cell is a commutative monoid with a distinguished invertible element;
//! a bicategory with one object is a monoidal category. This crate represents
//! each side of those correspondences as finite table data, checks the axioms
//! exhaustively, performs the dimension shifts in both directions, and decides
//! the equivalence (or non-equivalence) of the resulting totalities over
//! explicit finite universes.

pub mod algebra;
pub mod category;
#[cfg(feature = "cli")]
pub mod cli;
pub mod degenerate_cat;
pub mod doubly_degenerate;
pub mod equiv;
pub mod error;
pub mod json;
pub mod monad;
pub mod monoidal;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
pub use report::{Criterion, EquivalenceReport, ValidationReport, Violation};
