//! The graph of a game `X(𝒢)` on answer/question pairs and the
//! correspondence between winning strategies and independent sets of size
//! `n`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::format::{expect_arity, field, records, ParseError};
use crate::game::{DeterministicStrategy, GameError, RuleTuple, SynchronousGame};
use crate::graph::{complement, is_independent_set, LabeledGraph, VertexLabel};
use crate::numerics::{linalg, CMatrix, PvmFamily};
use crate::solvers::{max_clique, CliqueResult, SearchBudget};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndependenceError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("strategy does not fit the game")]
    StrategyShape,
    #[error("strategy does not win the game (loses at {0})")]
    NotWinning(RuleTuple),
    #[error("expected an independent set of size {expected}, got {got} vertices")]
    WrongSize { expected: usize, got: usize },
    #[error("vertex set is not independent in the game graph")]
    NotIndependent,
    #[error("pair (a={a}, x={x}) is out of range")]
    OutOfRange { a: usize, x: usize },
    #[error("family violates a packing hypothesis: {0}")]
    BadFamily(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `X(𝒢)`: vertex `(a,x)` sits at index `(x−1)k + (a−1)` and carries the
/// label `Plain(index + 1)`.
#[derive(Debug, Clone)]
pub struct GameGraph {
    pub graph: LabeledGraph,
    n: usize,
    k: usize,
}

impl GameGraph {
    pub fn n_questions(&self) -> usize {
        self.n
    }

    pub fn k_answers(&self) -> usize {
        self.k
    }

    pub fn vertex(&self, a: usize, x: usize) -> usize {
        (x - 1) * self.k + (a - 1)
    }

    /// The `(a, x)` pair of a vertex.
    pub fn pair(&self, v: usize) -> (usize, usize) {
        (v % self.k + 1, v / self.k + 1)
    }
}

/// `(a,x) ∼ (b,y)` iff the pairs differ and `λ(a,b,x,y)·λ(b,a,y,x) = 0`.
pub fn build_x_graph(g: &SynchronousGame) -> Result<GameGraph, GameError> {
    let report = crate::game::validate_game(g);
    if let Some(v) = report.violations.first() {
        return Err(GameError::Invalid(v.to_string()));
    }
    let (n, k) = (g.n_questions(), g.k_answers());
    if let Some(t) = g.zero_tuples().find(|t| t.x == t.y && t.a == t.b) {
        return Err(GameError::DiagonalZero { a: t.a, x: t.x });
    }
    let idx = |a: usize, x: usize| (x - 1) * k + (a - 1);
    let edges: Vec<(usize, usize)> = g
        .zero_tuples()
        .map(|t| (idx(t.a, t.x), idx(t.b, t.y)))
        .collect();
    let labels = (1..=n * k).map(VertexLabel::Plain).collect();
    let graph = LabeledGraph::from_edges(labels, edges).expect("indices in range, no loops");
    Ok(GameGraph { graph, n, k })
}

/// `{(f(x), x)}` as vertex indices, sorted.
pub fn strategy_to_independent_set(
    g: &SynchronousGame,
    xg: &GameGraph,
    f: &DeterministicStrategy,
) -> Result<Vec<usize>, IndependenceError> {
    if !f.fits(g) {
        return Err(IndependenceError::StrategyShape);
    }
    if let Some(t) = f.first_loss(g) {
        return Err(IndependenceError::NotWinning(t));
    }
    let s: Vec<usize> = (1..=g.n_questions()).map(|x| xg.vertex(f.answer(x), x)).collect();
    assert!(is_independent_set(&xg.graph, &s), "winning strategy gave a dependent set");
    Ok(s)
}

/// Reads the strategy off an independent set of size `n`; each question
/// appears exactly once because same-question vertices are adjacent.
pub fn independent_set_to_strategy(
    g: &SynchronousGame,
    xg: &GameGraph,
    s: &[usize],
) -> Result<DeterministicStrategy, IndependenceError> {
    let n = g.n_questions();
    if s.len() != n {
        return Err(IndependenceError::WrongSize { expected: n, got: s.len() });
    }
    if !is_independent_set(&xg.graph, s) {
        return Err(IndependenceError::NotIndependent);
    }
    let mut answers = vec![0; n];
    for &v in s {
        let (a, x) = xg.pair(v);
        answers[x - 1] = a;
    }
    let f = DeterministicStrategy::new(answers);
    if let Some(t) = f.first_loss(g) {
        panic!("independent set decoded to a strategy losing at {t}");
    }
    Ok(f)
}

/// Maximum independent set as a clique of the complement. `exact` is false
/// when the budget ran out, in which case the set is only a lower bound.
pub fn independence_number(g: &LabeledGraph, budget: SearchBudget) -> CliqueResult {
    max_clique(&complement(g), budget)
}

pub fn clique_number(g: &LabeledGraph, budget: SearchBudget) -> CliqueResult {
    max_clique(g, budget)
}

/// Outcome of checking `Σ p_{a,x} ⪯ n` for a packing family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PackingReport {
    /// Largest eigenvalue of `Σ p_{a,x}` (the size of the set for 0/1
    /// families).
    pub total: f64,
    pub bound: usize,
    pub tol: f64,
}

impl PackingReport {
    pub fn holds(&self) -> bool {
        self.total <= self.bound as f64 + self.tol
    }
}

/// 0/1 form: `chosen` lists the `(a, x)` pairs with `p_{a,x} = 1`. Two
/// chosen pairs must never form a forbidden tuple.
pub fn packing_bound_indicators(
    g: &SynchronousGame,
    chosen: &[(usize, usize)],
) -> Result<PackingReport, IndependenceError> {
    let (n, k) = (g.n_questions(), g.k_answers());
    if let Some(&(a, x)) = chosen.iter().find(|&&(a, x)| !(1..=k).contains(&a) || !(1..=n).contains(&x)) {
        return Err(IndependenceError::OutOfRange { a, x });
    }
    let mut distinct = chosen.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for &(a, x) in &distinct {
        for &(b, y) in &distinct {
            if !g.rule(a, b, x, y) {
                return Err(IndependenceError::BadFamily(format!(
                    "p({a},{x}) p({b},{y}) = 1 on forbidden tuple {}",
                    RuleTuple::new(a, b, x, y)
                )));
            }
        }
    }
    Ok(PackingReport {
        total: distinct.len() as f64,
        bound: n,
        tol: 0.0,
    })
}

/// Matrix form: every `p_{a,x}` must be a projection and
/// `‖p_{a,x} p_{b,y}‖ ≤ tol` on every forbidden tuple. Completeness is not
/// required.
pub fn packing_bound_matrices(
    g: &SynchronousGame,
    fam: &PvmFamily,
    tol: f64,
) -> Result<PackingReport, IndependenceError> {
    let (n, k) = (g.n_questions(), g.k_answers());
    if (fam.n_questions(), fam.k_answers()) != (n, k) {
        return Err(IndependenceError::BadFamily("family does not fit the game".into()));
    }
    for x in 1..=n {
        for a in 1..=k {
            let r = linalg::projector_residual(fam.projector(a, x));
            if r > tol {
                return Err(IndependenceError::BadFamily(format!(
                    "p({a},{x}) is not a projection (residual {r:e})"
                )));
            }
        }
    }
    for t in g.zero_tuples() {
        let r = linalg::op_norm(&(fam.projector(t.a, t.x) * fam.projector(t.b, t.y)));
        if r > tol {
            return Err(IndependenceError::BadFamily(format!(
                "‖p p‖ = {r:e} on forbidden tuple {t}"
            )));
        }
    }
    let mut sum: CMatrix = linalg::zeros(fam.dim());
    for p in fam.projectors() {
        sum += p;
    }
    Ok(PackingReport {
        total: linalg::max_eigenvalue_hermitian(&sum),
        bound: n,
        tol,
    })
}

/// One `a x` line per vertex, sorted.
pub fn write_independent_set(xg: &GameGraph, s: &[usize]) -> String {
    let mut pairs: Vec<(usize, usize)> = s.iter().map(|&v| xg.pair(v)).collect();
    pairs.sort_unstable();
    let mut out = String::new();
    for (a, x) in pairs {
        writeln!(out, "{a} {x}").unwrap();
    }
    out
}

pub fn parse_independent_set(xg: &GameGraph, text: &str) -> Result<Vec<usize>, IndependenceError> {
    let mut s = Vec::new();
    for (line, fields) in records(text) {
        expect_arity(line, &fields, 2)?;
        let a: usize = field(line, &fields, 0, "answer")?;
        let x: usize = field(line, &fields, 1, "question")?;
        if !(1..=xg.k).contains(&a) || !(1..=xg.n).contains(&x) {
            return Err(IndependenceError::OutOfRange { a, x });
        }
        s.push(xg.vertex(a, x));
    }
    Ok(s)
}
