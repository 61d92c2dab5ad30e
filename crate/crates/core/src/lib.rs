//! Synchronous non-local games and their graph reductions.

pub mod bitset;
pub mod coloring_reduction;
pub mod correlations;
pub mod format;
pub mod game;
pub mod graph;
pub mod independence;
pub mod numerics;
pub mod solvers;
pub mod union_find;
