//! Simple undirected graphs with structured vertex labels.

mod constructions;
mod io;
mod label;
mod labeled;
mod predicates;

pub use constructions::{
    complement, complete_graph, cycle, empty_graph, random_graph, rook_3x3, triangular_prism,
};
pub use io::{parse_coloring, parse_dimacs, parse_labels, write_coloring, write_dimacs, write_labels};
pub use label::{BaseVertex, LabelParseError, VertexLabel};
pub use labeled::{GraphError, LabeledGraph};
pub use predicates::{is_clique, is_homomorphism, is_independent_set, is_proper_coloring, Coloring};
