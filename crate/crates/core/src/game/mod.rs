//! Synchronous games: representation, validation and the rewrites that put
//! a game into the shape the reductions expect.

mod fixtures;
mod io;
mod labeling;
mod model;
mod preprocess;

use thiserror::Error;

pub use fixtures::{
    coloring_game, fixture_magic_square, fixture_tiny_unsat, fixture_trivial, hom_game,
    magic_square_solution, MAGIC_SQUARE_EQUATIONS, MAGIC_SQUARE_PARITY,
};
pub use io::{parse_game, write_game};
pub use labeling::{
    asymmetry_defect, classify_zero_tuples, label_class, relabel_answers, relabel_strategy,
    search_labeling, AnswerPermutation, LabelClass, LabelingBudget, LabelingResult,
    ZeroTupleClassification,
};
pub use model::{
    validate_game, DeterministicStrategy, RuleTuple, SynchronousGame, ValidationReport, Violation,
};
pub use preprocess::{
    asymmetrize, normalize_diagonal, pad_game, pad_strategy, prepare_for_coloring,
    replacement_question, unpad_strategy,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("invalid synchronous game: {0}")]
    Invalid(String),
    #[error("operation needs at least two questions, game has {0}")]
    TooFewQuestions(usize),
    #[error("rule({a},{a},{x},{x}) = 0; normalize the diagonal first")]
    DiagonalZero { a: usize, x: usize },
    #[error("rule table is not asymmetric at {0}")]
    NotAsymmetric(RuleTuple),
    #[error("expected {expected} answer permutations, got {got}")]
    PermutationCount { expected: usize, got: usize },
    #[error("permutation for question {x} is not a bijection on 1..={k}")]
    BadPermutation { x: usize, k: usize },
}
