use super::{tie_break_ranks, Meter, SearchBudget, SearchResult};
use crate::bitset::BitSet;
use crate::graph::{is_homomorphism, LabeledGraph};

/// Searches for a homomorphism `g → h`, returned as `phi[v]` = image of `v`.
///
/// Candidate images live in one bitset per vertex of `g`. Mapping `v` to
/// `w` intersects every unmapped neighbor's candidates with the
/// neighborhood of `w`; the next vertex is the one with fewest candidates.
pub fn find_hom(g: &LabeledGraph, h: &LabeledGraph, budget: SearchBudget) -> SearchResult<Vec<usize>> {
    let n = g.vertex_count();
    let mut s = HomSearch {
        g,
        h,
        domain: vec![BitSet::full(h.vertex_count()); n],
        image: vec![None; n],
        rank: tie_break_ranks(n, budget.seed),
        meter: Meter::new(&budget),
    };
    let found = if s.solve() {
        let phi: Vec<usize> = s.image.iter().map(|w| w.unwrap()).collect();
        debug_assert!(is_homomorphism(g, h, &phi));
        Some(phi)
    } else {
        None
    };
    s.meter.finish(found)
}

struct HomSearch<'a> {
    g: &'a LabeledGraph,
    h: &'a LabeledGraph,
    domain: Vec<BitSet>,
    image: Vec<Option<usize>>,
    rank: Vec<usize>,
    meter: Meter,
}

impl HomSearch<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.image.len())
            .filter(|&v| self.image[v].is_none())
            .min_by_key(|&v| (self.domain[v].count(), usize::MAX - self.g.degree(v), self.rank[v]))
    }

    fn solve(&mut self) -> bool {
        let Some(v) = self.pick() else { return true };
        let candidates: Vec<usize> = self.domain[v].iter().collect();
        for w in candidates {
            if !self.meter.tick() {
                return false;
            }
            let mut saved = Vec::new();
            let mut ok = true;
            for &u in self.g.neighbors(v) {
                if self.image[u].is_some() {
                    continue;
                }
                let old = self.domain[u].clone();
                self.domain[u].intersect_with(self.h.row(w));
                let empty = self.domain[u].is_empty();
                saved.push((u, old));
                if empty {
                    ok = false;
                    break;
                }
            }
            if ok {
                self.image[v] = Some(w);
                if self.solve() {
                    return true;
                }
                self.image[v] = None;
            }
            for (u, old) in saved.into_iter().rev() {
                self.domain[u] = old;
            }
            if self.meter.exhausted() {
                return false;
            }
        }
        false
    }
}
