//! Subset Feedback Vertex Set on chordal and split graphs.
//!
//! The crate provides a quadratic kernel for split graphs ([`kernel`]), a
//! bounded search tree solver for chordal graphs ([`solve`]), and a brute
//! force oracle used to certify both ([`oracle`]). Supporting layers cover
//! graph primitives, chordal structure, bipartite expansions, instance
//! generators and a small benchmark runner.

pub mod bench;
pub mod chordal;
pub mod expansion;
pub mod gen;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod solve;
pub mod trace;

pub use graph::{Edge, Graph, GraphError, Instance, Triangle, Vertex};
