//! Exact obstruction classes for inner post-Lie algebras and inner post-groups.
//!
//! Scalars live in the Gaussian rationals, groups are finite Cayley tables.

pub mod catalog;
pub mod cli;
pub mod document;
mod expr;
pub mod group;
pub mod group_obstruction;
pub mod harness;
pub mod integer;
pub mod lie;
pub mod lie_obstruction;
pub mod matrix;
pub mod postgroup;
pub mod postlie;
pub mod report;
pub mod scalar;
pub mod search;
pub mod tower;
