//! The gadget graph `G_λ` of an asymmetric synchronous game and the maps
//! between winning strategies and 3-colorings.
//!
//! `G_λ` consists of a base triangle `A, B, C`, a chain of rook's graphs
//! `R_{α,x}` per question (each glued to `B` and to its successor), a prism
//! per rook tying it to `A`, and one orthogonality rook `Q_{a,b,x,y}` or one
//! edge per forbidden tuple. Answer `a` to question `x` is read off the
//! special vertex `v̂(a,x)` having color 1.

mod build;
mod maps;
mod tables;

use thiserror::Error;

pub use build::{build_g_lambda, vertex_count_formula, vertex_count_upper_bound, GadgetCounts, GadgetGraph};
pub use maps::{
    coloring_to_strategy, operator_strategy_to_operator_coloring, strategy_to_coloring,
    OperatorColoringReport, DEFAULT_OPERATOR_TOL,
};

use crate::game::{GameError, RuleTuple};
use crate::graph::{GraphError, VertexLabel};
use crate::numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("gadget needs k >= 3 answers, game has {0}")]
    TooFewAnswers(usize),
    #[error("identification would merge base vertices {0} and {1}")]
    MergedBase(VertexLabel, VertexLabel),
    #[error("tuples {0} and its mirror are both forbidden")]
    MirroredTuple(RuleTuple),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("strategy does not win the game (loses at {0})")]
    NotWinning(RuleTuple),
    #[error("strategy does not fit the game")]
    StrategyShape,
    #[error("coloring is not a proper 3-coloring of the gadget graph")]
    ImproperColoring,
    #[error("operator strategy is invalid: {0}")]
    InvalidOperatorStrategy(String),
    #[error("operator coloring residual {residual:e} exceeds {tol:e} at {location}")]
    Residual {
        residual: f64,
        tol: f64,
        location: String,
    },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
