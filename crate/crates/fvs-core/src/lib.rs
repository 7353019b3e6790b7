//! Exact solvers for the feedback vertex set problem on undirected
//! multigraphs: a shared branch-and-reduce framework with interchangeable
//! pivot strategies, a polynomial solver for subcubic residues via graphic
//! matroid parity, branching guided by a rooted half-integral relaxation, and
//! a lazy cycle-constraint ILP mode.

pub mod algo;
pub mod approx;
pub mod branch;
mod cycles;
pub mod gen;
pub mod graph;
pub mod halfint;
pub mod ilp;
pub mod io;
pub mod oracle;
pub mod reduce;
pub mod subcubic;

pub use graph::{Instance, MultiGraph, Solution, VertexId, VertexSet};
