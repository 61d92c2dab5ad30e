//! Exact search engines. Each returns a certificate, a proof that none
//! exists (the search tree was closed), or an inconclusive verdict when the
//! budget ran out.

mod clique;
mod coloring;
mod hom;
mod strategy;

use std::time::{Duration, Instant};

pub use clique::{max_clique, CliqueResult};
pub use coloring::{find_coloring, find_coloring_with_precolor};
pub use hom::find_hom;
pub use strategy::find_deterministic_strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_millis: u64,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 1_000_000_000,
            max_millis: 60_000,
            seed: 0,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_millis(mut self, ms: u64) -> Self {
        self.max_millis = ms;
        self
    }

    pub fn with_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = nodes;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    ProvenNone,
    Inconclusive,
}

impl<T> SearchOutcome<T> {
    pub fn found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_proven_none(&self) -> bool {
        matches!(self, SearchOutcome::ProvenNone)
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, SearchOutcome::Inconclusive)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::ProvenNone => SearchOutcome::ProvenNone,
            SearchOutcome::Inconclusive => SearchOutcome::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Branching decisions taken; propagated assignments are not counted.
    pub nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult<T> {
    pub outcome: SearchOutcome<T>,
    pub stats: SearchStats,
}

/// Node and wall-clock accounting shared by the searches.
pub(crate) struct Meter {
    start: Instant,
    limit: Duration,
    max_nodes: u64,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        Meter {
            start: Instant::now(),
            limit: Duration::from_millis(budget.max_millis),
            max_nodes: budget.max_nodes,
            nodes: 0,
            exhausted: false,
        }
    }

    /// Counts one node; returns false once the budget is spent.
    #[inline]
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes
            || (self.nodes & 0x3ff == 0 && self.start.elapsed() > self.limit)
        {
            self.exhausted = true;
        }
        !self.exhausted
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub(crate) fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }

    pub(crate) fn finish<T>(&self, found: Option<T>) -> SearchResult<T> {
        let outcome = match found {
            Some(t) => SearchOutcome::Found(t),
            None if self.exhausted => SearchOutcome::Inconclusive,
            None => SearchOutcome::ProvenNone,
        };
        SearchResult {
            outcome,
            stats: self.stats(),
        }
    }
}

/// A seeded permutation used to break ties between otherwise equal choices.
pub(crate) fn tie_break_ranks(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    let mut rank = vec![0; n];
    for (r, v) in order.into_iter().enumerate() {
        rank[v] = r;
    }
    rank
}
