//! Executable combinatorics for graph products over simplicial graphs.
//!
//! - [`graph`]: finite simplicial graphs, pins, the pinning operation.
//! - [`pincushion`]: graded pincushion-class membership with certificates.
//! - [`words`]: graph-product words, normal forms, the RAAG word problem.
//! - [`lin_lab`]: recovering matrix families that commute according to a
//!   graph from nearby almost-commuting ones, in the normalized
//!   Hilbert-Schmidt norm.
//! - [`cli`]: the `graphprod` command-line front end.

pub mod cli;
pub mod graph;
pub mod lin_lab;
pub mod pincushion;
pub mod words;
