//! Finite-dimensional operator strategies: PVM families, tracial
//! correlations, quantum permutations and the matrix-level projection
//! identities.

pub mod linalg;
mod mermin;
mod pvm;
mod qperm;
mod section3;

use thiserror::Error;

use crate::format::ParseError;

pub use linalg::CMatrix;
pub use mermin::{magic_square_observables, mermin_peres_fixture};
pub use pvm::{
    correlation_for_game, correlation_from_tracial, parse_pvm, validate_pvm, write_pvm, PvmFamily,
    PvmReport,
};
pub use qperm::{
    latin_squares_3, prism_coloring_from_qperm, random_latin_cube_family,
    random_quantum_permutation_3, rook_coloring_from_qperm, LatinCubeFamily, LatinSquare,
    OperatorColoring, QuantumPermutation3,
};
pub use section3::{
    key_three_projection, key_three_projection_orthogonal, latin_cube_commutes,
    operator_coloring_commutes, quantum_permutation_commutes, quantum_permutation_suite,
    rows_to_quantum_permutation, three_projections_sum_one, three_projections_sum_zero,
    triangle_coloring_sums, PredicateReport,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("empty block specification")]
    EmptySpec,
    #[error(transparent)]
    Parse(#[from] ParseError),
}
