//! Partitions of complete geometric graphs into k-planar and k-quasi-planar
//! subgraphs.
//!
//! The crate builds the constructive partitions (slope intervals for convex
//! position, double-star spanning trees, halving-line and crossing-family
//! colorings for general position), verifies them exactly, and evaluates the
//! associated extremal bounds against brute-force oracles.
//!
//! All geometry is done on integer coordinates with exact predicates; the
//! convex-position machinery in [`convex`] is purely combinatorial.

pub mod bounds;
pub mod clique;
pub mod convex;
pub mod geometry;
pub mod io;
pub mod quasi;
pub mod svg;

mod coloring;

pub use coloring::{edge_count, edge_index, Coloring, ColoringError, Edge};
pub use geometry::{Point, PointSet};
