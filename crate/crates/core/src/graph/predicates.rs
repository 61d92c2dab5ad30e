//! Certificate checks. Each predicate is independent of the solvers that
//! produce certificates.

use super::labeled::LabeledGraph;

/// A total vertex coloring with colors in `1..=palette`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    palette: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, palette: usize) -> Self {
        Coloring { colors, palette }
    }

    #[inline]
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Applies `sigma` (1-based, `sigma[c-1]` is the image of color `c`).
    pub fn permuted(&self, sigma: &[usize]) -> Coloring {
        Coloring {
            colors: self.colors.iter().map(|&c| sigma[c - 1]).collect(),
            palette: self.palette,
        }
    }
}

/// Total, colors within the palette, and no monochromatic edge.
pub fn is_proper_coloring(g: &LabeledGraph, c: &Coloring) -> bool {
    c.len() == g.vertex_count()
        && c.colors.iter().all(|&col| (1..=c.palette).contains(&col))
        && g.edges().all(|(u, v)| c.color(u) != c.color(v))
}

fn distinct_in_range(g: &LabeledGraph, s: &[usize]) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    s.iter()
        .all(|&v| v < g.vertex_count() && !std::mem::replace(&mut seen[v], true))
}

/// No two vertices of `s` are adjacent (and `s` has no repeats).
pub fn is_independent_set(g: &LabeledGraph, s: &[usize]) -> bool {
    distinct_in_range(g, s)
        && s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !g.adjacent(u, v)))
}

/// Every two vertices of `s` are adjacent (and `s` has no repeats).
pub fn is_clique(g: &LabeledGraph, s: &[usize]) -> bool {
    distinct_in_range(g, s)
        && s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| g.adjacent(u, v)))
}

/// `phi[v]` is the image in `h` of vertex `v` of `g`; every edge must map
/// to an edge.
pub fn is_homomorphism(g: &LabeledGraph, h: &LabeledGraph, phi: &[usize]) -> bool {
    phi.len() == g.vertex_count()
        && phi.iter().all(|&w| w < h.vertex_count())
        && g.edges().all(|(u, v)| h.adjacent(phi[u], phi[v]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::constructions::{complement, complete_graph, cycle, random_graph};

    #[test]
    fn triangle_rainbow_is_proper() {
        let g = complete_graph(3);
        assert!(is_proper_coloring(&g, &Coloring::new(vec![1, 2, 3], 3)));
        assert!(!is_proper_coloring(&g, &Coloring::new(vec![1, 2, 2], 3)));
        assert!(!is_proper_coloring(&g, &Coloring::new(vec![1, 2, 4], 3)));
        assert!(!is_proper_coloring(&g, &Coloring::new(vec![1, 2], 3)));
    }

    #[test]
    fn c5_has_no_two_coloring_by_enumeration() {
        let g = cycle(5);
        for code in 0..32u32 {
            let colors = (0..5).map(|i| (code >> i & 1) as usize + 1).collect();
            assert!(!is_proper_coloring(&g, &Coloring::new(colors, 2)));
        }
    }

    #[test]
    fn independent_set_is_clique_in_complement() {
        for seed in 0..20 {
            let g = random_graph(7, 0.5, seed);
            let gc = complement(&g);
            for mask in 0u32..128 {
                let s: Vec<usize> = (0..7).filter(|i| mask >> i & 1 == 1).collect();
                assert_eq!(is_independent_set(&g, &s), is_clique(&gc, &s));
            }
        }
    }

    #[test]
    fn repeated_vertices_are_rejected() {
        let g = cycle(5);
        assert!(!is_independent_set(&g, &[0, 0]));
        assert!(is_independent_set(&g, &[0, 2]));
        assert!(!is_clique(&g, &[1, 1]));
    }

    #[test]
    fn homomorphism_check() {
        let c5 = cycle(5);
        let k3 = complete_graph(3);
        assert!(is_homomorphism(&c5, &k3, &[0, 1, 0, 1, 2]));
        assert!(!is_homomorphism(&c5, &k3, &[0, 1, 0, 1, 0]));
        assert!(is_homomorphism(&c5, &c5, &[0, 1, 2, 3, 4]));
    }
}
