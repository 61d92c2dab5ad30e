//! Maximum clique by branch and bound with a greedy-coloring bound, in the
//! style of Tomita's MCQ.

use super::{Meter, SearchBudget, SearchStats};
use crate::bitset::BitSet;
use crate::graph::{is_clique, LabeledGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    /// Largest clique found, sorted.
    pub clique: Vec<usize>,
    /// True when the search finished, so `clique` is maximum.
    pub exact: bool,
    pub stats: SearchStats,
}

pub fn max_clique(g: &LabeledGraph, budget: SearchBudget) -> CliqueResult {
    let n = g.vertex_count();
    // Vertices in non-increasing degree order seed the coloring.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut s = CliqueSearch {
        g,
        order,
        best: Vec::new(),
        current: Vec::new(),
        meter: Meter::new(&budget),
    };
    s.expand(BitSet::full(n));
    let mut clique = s.best;
    clique.sort_unstable();
    debug_assert!(is_clique(g, &clique));
    CliqueResult {
        clique,
        exact: !s.meter.exhausted(),
        stats: s.meter.stats(),
    }
}

struct CliqueSearch<'a> {
    g: &'a LabeledGraph,
    order: Vec<usize>,
    best: Vec<usize>,
    current: Vec<usize>,
    meter: Meter,
}

impl CliqueSearch<'_> {
    /// Greedy sequential coloring of `p`; returns the vertices sorted by
    /// color class together with each one's color number.
    fn color_sort(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored: Vec<usize> = self.order.iter().copied().filter(|&v| p.contains(v)).collect();
        let mut verts = Vec::with_capacity(uncolored.len());
        let mut bounds = Vec::with_capacity(uncolored.len());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut class: Vec<usize> = Vec::new();
            uncolored.retain(|&v| {
                if class.iter().all(|&u| !self.g.adjacent(u, v)) {
                    class.push(v);
                    false
                } else {
                    true
                }
            });
            for v in class {
                verts.push(v);
                bounds.push(color);
            }
        }
        (verts, bounds)
    }

    fn expand(&mut self, mut p: BitSet) {
        let (verts, bounds) = self.color_sort(&p);
        for i in (0..verts.len()).rev() {
            if self.current.len() + bounds[i] <= self.best.len() {
                return;
            }
            if !self.meter.tick() {
                return;
            }
            let v = verts[i];
            self.current.push(v);
            let mut next = p.clone();
            next.intersect_with(self.g.row(v));
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.remove(v);
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complement, complete_graph, cycle, empty_graph, random_graph, rook_3x3};

    fn brute_force_clique_number(g: &LabeledGraph) -> usize {
        let n = g.vertex_count();
        (0u32..1 << n)
            .filter(|&mask| {
                let s: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                is_clique(g, &s)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn known_values() {
        let b = SearchBudget::default();
        assert_eq!(max_clique(&complete_graph(6), b).clique.len(), 6);
        assert_eq!(max_clique(&empty_graph(4), b).clique.len(), 1);
        assert_eq!(max_clique(&empty_graph(0), b).clique.len(), 0);
        assert_eq!(max_clique(&cycle(5), b).clique.len(), 2);
        assert_eq!(max_clique(&complement(&cycle(5)), b).clique.len(), 2);
        assert_eq!(max_clique(&rook_3x3(), b).clique.len(), 3);
    }

    #[test]
    fn agrees_with_brute_force() {
        for n in 0..=12 {
            for seed in 0..8 {
                let g = random_graph(n, 0.2 + 0.08 * seed as f64, seed + 17 * n as u64);
                let r = max_clique(&g, SearchBudget::default());
                assert!(r.exact);
                assert!(is_clique(&g, &r.clique));
                assert_eq!(r.clique.len(), brute_force_clique_number(&g));
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let g = random_graph(60, 0.7, 1);
        let r = max_clique(&g, SearchBudget::default().with_nodes(3));
        assert!(!r.exact);
        assert!(is_clique(&g, &r.clique));
    }
}
