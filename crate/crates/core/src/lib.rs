//! Matroids over small finite fields.
//!
//! Matroids are rank oracles over labeled ground sets of at most 24 elements
//! (32 for rank queries on matrices). On top of that core the crate provides
//! connectivity functions and separation searches, modular restrictions and
//! modular sums, representation search and extension over GF(q), the
//! dualization construction through a coupling matroid, and instance-level
//! checks of structural statements about such matroids.

pub mod battery;
pub mod connectivity;
pub mod dualization;
pub mod field;
pub mod fixtures;
pub mod harness;
pub mod matrix;
pub mod matroid;
pub mod modularity;
pub mod representation;
pub mod subset;

pub use field::{Elem, FieldSpec};
pub use matrix::GfMatrix;
pub use matroid::{Matroid, MinorSpec};
pub use subset::Subset;
