//! DSATUR backtracking with forward checking and unit propagation.
//!
//! Each vertex keeps a bitmask of colors still available to it. Assigning a
//! color strikes it from every uncolored neighbor; a neighbor left with one
//! color is assigned at once, and an empty mask is a conflict. All changes
//! go on a trail so a failed branch is undone in reverse order.

use super::{tie_break_ranks, Meter, SearchBudget, SearchResult};
use crate::graph::{is_proper_coloring, Coloring, LabeledGraph};

/// Searches for a proper coloring of `g` with colors `1..=c` (`c ≤ 64`).
pub fn find_coloring(g: &LabeledGraph, c: usize, budget: SearchBudget) -> SearchResult<Coloring> {
    find_coloring_with_precolor(g, c, &[], budget)
}

/// As [`find_coloring`], with some vertices fixed in advance. `precolor`
/// holds `(vertex, color)` pairs.
pub fn find_coloring_with_precolor(
    g: &LabeledGraph,
    c: usize,
    precolor: &[(usize, usize)],
    budget: SearchBudget,
) -> SearchResult<Coloring> {
    assert!((1..=64).contains(&c), "palette must be in 1..=64");
    let mut search = Search::new(g, c, budget);
    let mut ok = true;
    for &(v, col) in precolor {
        assert!((1..=c).contains(&col), "precolor {col} outside 1..={c}");
        if search.color[v] != 0 {
            ok &= search.color[v] == col as u8;
        } else {
            ok = ok && search.domain[v] & bit(col - 1) != 0 && search.assign(v, col - 1);
        }
    }
    let found = if ok && search.solve() {
        let colors = search.color.iter().map(|&c| c as usize).collect();
        let coloring = Coloring::new(colors, c);
        debug_assert!(is_proper_coloring(g, &coloring));
        Some(coloring)
    } else {
        None
    };
    search.meter.finish(found)
}

#[inline]
fn bit(c: usize) -> u64 {
    1u64 << c
}

enum Trail {
    Domain(usize, u64),
    Color(usize),
}

struct Search<'g> {
    g: &'g LabeledGraph,
    full: u64,
    domain: Vec<u64>,
    /// 1-based color, 0 while uncolored.
    color: Vec<u8>,
    uncolored_degree: Vec<usize>,
    use_count: Vec<usize>,
    used: u64,
    rank: Vec<usize>,
    trail: Vec<Trail>,
    queue: Vec<usize>,
    remaining: usize,
    meter: Meter,
}

impl<'g> Search<'g> {
    fn new(g: &'g LabeledGraph, c: usize, budget: SearchBudget) -> Self {
        let n = g.vertex_count();
        let full = if c == 64 { u64::MAX } else { bit(c) - 1 };
        Search {
            g,
            full,
            domain: vec![full; n],
            color: vec![0; n],
            uncolored_degree: (0..n).map(|v| g.degree(v)).collect(),
            use_count: vec![0; c],
            used: 0,
            rank: tie_break_ranks(n, budget.seed),
            trail: Vec::with_capacity(4 * n),
            queue: Vec::new(),
            remaining: n,
            meter: Meter::new(&budget),
        }
    }

    /// Colors `v` with the 0-based color `c` and propagates. Returns false
    /// on conflict; the trail still records every change.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.queue.clear();
        self.set(v, c);
        let mut ok = self.strike(v, c);
        while ok {
            let Some(u) = self.queue.pop() else { break };
            if self.color[u] != 0 {
                continue;
            }
            let d = self.domain[u];
            if d == 0 {
                ok = false;
                break;
            }
            let cu = d.trailing_zeros() as usize;
            self.set(u, cu);
            ok = self.strike(u, cu);
        }
        ok
    }

    fn set(&mut self, v: usize, c: usize) {
        self.color[v] = c as u8 + 1;
        self.remaining -= 1;
        self.use_count[c] += 1;
        self.used |= bit(c);
        for &u in self.g.neighbors(v) {
            self.uncolored_degree[u] -= 1;
        }
        self.trail.push(Trail::Color(v));
    }

    fn strike(&mut self, v: usize, c: usize) -> bool {
        let g = self.g;
        for &u in g.neighbors(v) {
            if self.color[u] != 0 {
                if self.color[u] as usize == c + 1 {
                    return false;
                }
                continue;
            }
            let d = self.domain[u];
            if d & bit(c) != 0 {
                self.trail.push(Trail::Domain(u, d));
                let nd = d & !bit(c);
                self.domain[u] = nd;
                if nd == 0 {
                    return false;
                }
                if nd.is_power_of_two() {
                    self.queue.push(u);
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Trail::Domain(u, d) => self.domain[u] = d,
                Trail::Color(v) => {
                    let c = self.color[v] as usize - 1;
                    self.color[v] = 0;
                    self.remaining += 1;
                    self.use_count[c] -= 1;
                    if self.use_count[c] == 0 {
                        self.used &= !bit(c);
                    }
                    for &u in self.g.neighbors(v) {
                        self.uncolored_degree[u] += 1;
                    }
                }
            }
        }
    }

    /// Fewest remaining colors first, then most uncolored neighbors, then
    /// the seeded rank.
    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (u32::MAX, usize::MAX, usize::MAX);
        for v in 0..self.color.len() {
            if self.color[v] != 0 {
                continue;
            }
            let k = (
                self.domain[v].count_ones(),
                usize::MAX - self.uncolored_degree[v],
                self.rank[v],
            );
            if k < key {
                key = k;
                best = v;
            }
        }
        best
    }

    fn solve(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        let v = self.pick();
        // Colors nobody uses yet are interchangeable, so only the lowest of
        // them needs to be tried.
        let unused = self.full & !self.used;
        let fresh = if unused == 0 { 0 } else { unused & unused.wrapping_neg() };
        let mut candidates = self.domain[v] & (self.used | fresh);
        while candidates != 0 {
            let c = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if !self.meter.tick() {
                return false;
            }
            let mark = self.trail.len();
            if self.assign(v, c) && self.solve() {
                return true;
            }
            self.undo_to(mark);
            if self.meter.exhausted() {
                return false;
            }
        }
        false
    }
}
