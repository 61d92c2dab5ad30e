use super::{Meter, SearchBudget, SearchResult};
use crate::bitset::BitSet;
use crate::game::{DeterministicStrategy, SynchronousGame};

/// Depth-first search for a winning deterministic strategy.
///
/// Answering `x` with `a` removes from every open question `y` each `b`
/// with `rule(a,b,x,y) = 0` or `rule(b,a,y,x) = 0`. The open question with
/// the fewest remaining answers is branched on next.
pub fn find_deterministic_strategy(
    g: &SynchronousGame,
    budget: SearchBudget,
) -> SearchResult<DeterministicStrategy> {
    let (n, k) = (g.n_questions(), g.k_answers());
    let mut domain = vec![BitSet::new(k); n];
    for (x, d) in domain.iter_mut().enumerate() {
        for a in 0..k {
            d.set(a, g.rule(a + 1, a + 1, x + 1, x + 1));
        }
    }
    let mut s = StrategySearch {
        g,
        domain,
        answer: vec![0; n],
        meter: Meter::new(&budget),
    };
    let found = if s.domain.iter().all(|d| !d.is_empty()) && s.solve() {
        let f = DeterministicStrategy::new(s.answer.clone());
        debug_assert!(f.wins(g));
        Some(f)
    } else {
        None
    };
    s.meter.finish(found)
}

struct StrategySearch<'a> {
    g: &'a SynchronousGame,
    domain: Vec<BitSet>,
    /// 1-based answer, 0 while open.
    answer: Vec<usize>,
    meter: Meter,
}

impl StrategySearch<'_> {
    fn solve(&mut self) -> bool {
        let Some(x) = (0..self.answer.len())
            .filter(|&x| self.answer[x] == 0)
            .min_by_key(|&x| self.domain[x].count())
        else {
            return true;
        };
        let candidates: Vec<usize> = self.domain[x].iter().collect();
        for a in candidates {
            if !self.meter.tick() {
                return false;
            }
            let mut saved = Vec::new();
            let mut ok = true;
            for y in 0..self.answer.len() {
                if y == x || self.answer[y] != 0 {
                    continue;
                }
                let old = self.domain[y].clone();
                for b in old.iter() {
                    if !self.g.rule(a + 1, b + 1, x + 1, y + 1) || !self.g.rule(b + 1, a + 1, y + 1, x + 1) {
                        self.domain[y].remove(b);
                    }
                }
                let empty = self.domain[y].is_empty();
                saved.push((y, old));
                if empty {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.answer[x] = a + 1;
                if self.solve() {
                    return true;
                }
                self.answer[x] = 0;
            }
            for (y, old) in saved {
                self.domain[y] = old;
            }
            if self.meter.exhausted() {
                return false;
            }
        }
        false
    }
}
