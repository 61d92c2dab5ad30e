use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::labeled::LabeledGraph;

pub fn complete_graph(n: usize) -> LabeledGraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    LabeledGraph::plain(n, edges).expect("valid edges")
}

pub fn empty_graph(n: usize) -> LabeledGraph {
    LabeledGraph::plain(n, []).expect("valid edges")
}

/// The cycle `C_n`; `n = 1` is a single vertex and `n = 2` a single edge.
pub fn cycle(n: usize) -> LabeledGraph {
    let edges: Vec<_> = match n {
        0 | 1 => vec![],
        2 => vec![(0, 1)],
        _ => (0..n).map(|u| (u, (u + 1) % n)).collect(),
    };
    LabeledGraph::plain(n, edges).expect("valid edges")
}

/// `K₃ × K₃`: vertex `3(i-1) + (j-1)` is cell `(i,j)`, and two cells are
/// adjacent iff exactly one coordinate agrees.
pub fn rook_3x3() -> LabeledGraph {
    let cell = |v: usize| (v / 3, v % 3);
    let mut edges = Vec::new();
    for u in 0..9 {
        for v in u + 1..9 {
            let ((i, j), (k, l)) = (cell(u), cell(v));
            if (i == k) != (j == l) {
                edges.push((u, v));
            }
        }
    }
    LabeledGraph::plain(9, edges).expect("valid edges")
}

/// Vertices in the order `p, q, r, s, t, u`: triangles `{p,q,r}` and
/// `{s,t,u}` joined by the matching `p–s, q–t, r–u`.
pub fn triangular_prism() -> LabeledGraph {
    let edges = [
        (0, 1),
        (1, 2),
        (0, 2),
        (3, 4),
        (4, 5),
        (3, 5),
        (0, 3),
        (1, 4),
        (2, 5),
    ];
    LabeledGraph::plain(6, edges).expect("valid edges")
}

/// Flips every non-diagonal pair; labels are kept.
pub fn complement(g: &LabeledGraph) -> LabeledGraph {
    let n = g.vertex_count();
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| !g.adjacent(u, v)).map(move |v| (u, v)));
    LabeledGraph::from_edges(g.labels().to_vec(), edges).expect("valid edges")
}

/// Erdős–Rényi `G(n, p)` from a seeded generator.
pub fn random_graph(n: usize, p: f64, seed: u64) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    LabeledGraph::plain(n, edges).expect("valid edges")
}
