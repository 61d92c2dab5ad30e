use std::collections::HashMap;

use super::ReductionError;
use crate::game::{
    asymmetry_defect, classify_zero_tuples, validate_game, GameError, RuleTuple, SynchronousGame,
    ZeroTupleClassification,
};
use crate::graph::{BaseVertex, LabeledGraph, VertexLabel};
use crate::union_find::UnionFind;

/// New vertices contributed by each gadget family, after identifications.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GadgetCounts {
    pub base: usize,
    /// `R_{1,x}`, 8 each.
    pub rook_first: usize,
    /// `R_{α,x}` with `α ≥ 2`, 7 each.
    pub rook_later: usize,
    /// 2 per prism.
    pub prism: usize,
    /// 6 per orthogonality rook.
    pub orthogonality: usize,
}

impl GadgetCounts {
    pub fn total(&self) -> usize {
        self.base + self.rook_first + self.rook_later + self.prism + self.orthogonality
    }
}

#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: LabeledGraph,
    /// The asymmetric game the graph was built from.
    pub game: SynchronousGame,
    pub classification: ZeroTupleClassification,
    pub counts: GadgetCounts,
    /// Every gadget label identified into each vertex, sorted; the first is
    /// the vertex's own label.
    pub members: Vec<Vec<VertexLabel>>,
    special: Vec<usize>,
    base: [usize; 3],
}

impl GadgetGraph {
    /// Index of `v̂(a,x)`.
    pub fn special_vertex(&self, a: usize, x: usize) -> usize {
        self.special[(x - 1) * self.game.k_answers() + (a - 1)]
    }

    /// Index of a base vertex.
    pub fn base_vertex(&self, b: BaseVertex) -> usize {
        self.base[b.canonical_color() - 1]
    }

    /// `(vertex, color)` pairs fixing the base triangle to `A ↦ 1, B ↦ 2, C ↦ 3`.
    pub fn base_precoloring(&self) -> [(usize, usize); 3] {
        BaseVertex::ALL.map(|b| (self.base_vertex(b), b.canonical_color()))
    }
}

/// `3 + n + 9n(k−2) + 6(|E| + |F|)`.
pub fn vertex_count_formula(g: &SynchronousGame) -> Result<usize, ReductionError> {
    let c = classify_zero_tuples(g)?;
    Ok(base_count(g) + 6 * c.gadget_count())
}

/// `3 + n + 9n(k−2) + 6·|off-diagonal zeros|`.
pub fn vertex_count_upper_bound(g: &SynchronousGame) -> Result<usize, ReductionError> {
    let c = classify_zero_tuples(g)?;
    Ok(base_count(g) + 6 * c.total())
}

fn base_count(g: &SynchronousGame) -> usize {
    let (n, k) = (g.n_questions(), g.k_answers());
    3 + n + 9 * n * (k.saturating_sub(2))
}

fn special_label(a: usize, x: usize, k: usize) -> VertexLabel {
    if a == 1 {
        VertexLabel::Rook { i: 1, j: 1, alpha: 1, x }
    } else if a < k {
        VertexLabel::Rook { i: 2, j: 1, alpha: a - 1, x }
    } else {
        VertexLabel::Rook { i: 2, j: 2, alpha: k - 2, x }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    Base,
    RookFirst,
    RookLater,
    Prism,
    Orthogonality,
}

struct Builder {
    labels: Vec<VertexLabel>,
    family: Vec<Family>,
    index: HashMap<VertexLabel, usize>,
    uf: UnionFind,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, label: VertexLabel, family: Family) -> usize {
        if let Some(&v) = self.index.get(&label) {
            return v;
        }
        let v = self.uf.push();
        self.labels.push(label);
        self.family.push(family);
        self.index.insert(label, v);
        v
    }

    fn at(&self, label: VertexLabel) -> usize {
        self.index[&label]
    }

    /// Adds a 3×3 rook's graph; returns its cells row-major.
    fn rook(&mut self, cell: impl Fn(usize, usize) -> VertexLabel, family: Family) -> [usize; 9] {
        let mut vs = [0; 9];
        for (idx, v) in vs.iter_mut().enumerate() {
            *v = self.vertex(cell(idx / 3 + 1, idx % 3 + 1), family);
        }
        for u in 0..9 {
            for w in u + 1..9 {
                if (u / 3 == w / 3) != (u % 3 == w % 3) {
                    self.edges.push((vs[u], vs[w]));
                }
            }
        }
        vs
    }
}

/// Builds `G_λ`. The game must be valid and asymmetric with `n ≥ 2` and
/// `k ≥ 3`; see `prepare_for_coloring` for the preprocessing that gets an
/// arbitrary game there.
pub fn build_g_lambda(g: &SynchronousGame) -> Result<GadgetGraph, ReductionError> {
    let report = validate_game(g);
    if let Some(v) = report.violations.first() {
        return Err(GameError::Invalid(v.to_string()).into());
    }
    let (n, k) = (g.n_questions(), g.k_answers());
    if n < 2 {
        return Err(GameError::TooFewQuestions(n).into());
    }
    if k < 3 {
        return Err(ReductionError::TooFewAnswers(k));
    }
    if let Some(t) = asymmetry_defect(g) {
        return Err(GameError::NotAsymmetric(t).into());
    }
    let classification = classify_zero_tuples(g)?;

    let mut b = Builder {
        labels: Vec::new(),
        family: Vec::new(),
        index: HashMap::new(),
        uf: UnionFind::new(0),
        edges: Vec::new(),
    };
    let [va, vb, vc] = BaseVertex::ALL.map(|x| b.vertex(VertexLabel::Base(x), Family::Base));
    b.edges.extend([(va, vb), (vb, vc), (va, vc)]);

    for x in 1..=n {
        for alpha in 1..=k - 2 {
            let family = if alpha == 1 { Family::RookFirst } else { Family::RookLater };
            let r = b.rook(|i, j| VertexLabel::Rook { i, j, alpha, x }, family);
            b.uf.union(r[1], vb);
            if alpha >= 2 {
                let prev = b.at(VertexLabel::Rook { i: 3, j: 2, alpha: alpha - 1, x });
                b.uf.union(prev, r[0]);
            }
            b.edges.push((va, r[8]));
            b.edges.push((vc, r[3]));
            let t1 = b.vertex(VertexLabel::Prism { t: 1, alpha, x }, Family::Prism);
            let t2 = b.vertex(VertexLabel::Prism { t: 2, alpha, x }, Family::Prism);
            b.edges.extend([(t1, va), (va, t2), (t1, t2), (r[0], t1), (vb, va), (r[2], t2)]);
        }
    }

    let mut zeros: Vec<RuleTuple> = g.off_diagonal_zero_tuples().collect();
    zeros.sort();
    for t in zeros {
        if !g.allows(t.mirrored()) {
            return Err(ReductionError::MirroredTuple(t));
        }
        let sa = b.at(special_label(t.a, t.x, k));
        let sb = b.at(special_label(t.b, t.y, k));
        let end = |v: usize| v == 1 || v == k;
        match (end(t.a), end(t.b)) {
            (true, false) | (false, true) => b.edges.push((sa, sb)),
            (ends, _) => {
                let RuleTuple { a, b: bb, x, y } = t;
                let q = b.rook(|i, j| VertexLabel::QRook { i, j, a, b: bb, x, y }, Family::Orthogonality);
                b.uf.union(q[0], sa);
                b.uf.union(q[4], sb);
                b.uf.union(q[1], if ends { vb } else { vc });
                b.edges.push((va, q[8]));
            }
        }
    }

    compact(b, g, classification, k)
}

fn compact(
    mut b: Builder,
    g: &SynchronousGame,
    classification: ZeroTupleClassification,
    k: usize,
) -> Result<GadgetGraph, ReductionError> {
    let total = b.labels.len();
    let mut new_index = vec![usize::MAX; total];
    let mut root_index: HashMap<usize, usize> = HashMap::new();
    let mut members: Vec<Vec<VertexLabel>> = Vec::new();
    let mut counts = GadgetCounts::default();
    for v in 0..total {
        let root = b.uf.find(v);
        let idx = *root_index.entry(root).or_insert_with(|| {
            members.push(Vec::new());
            // The first provisional vertex of a class is the one whose
            // gadget introduced it.
            match b.family[v] {
                Family::Base => counts.base += 1,
                Family::RookFirst => counts.rook_first += 1,
                Family::RookLater => counts.rook_later += 1,
                Family::Prism => counts.prism += 1,
                Family::Orthogonality => counts.orthogonality += 1,
            }
            members.len() - 1
        });
        new_index[v] = idx;
        members[idx].push(b.labels[v]);
    }
    for m in &mut members {
        m.sort();
        let bases: Vec<_> = m.iter().filter(|l| matches!(l, VertexLabel::Base(_))).collect();
        if bases.len() > 1 {
            return Err(ReductionError::MergedBase(*bases[0], *bases[1]));
        }
    }
    let labels: Vec<VertexLabel> = members.iter().map(|m| m[0]).collect();
    let mut edges = Vec::with_capacity(b.edges.len());
    for &(u, v) in &b.edges {
        let (nu, nv) = (new_index[u], new_index[v]);
        if nu == nv {
            return Err(ReductionError::Internal(format!(
                "identification turned the edge {} ~ {} into a loop",
                b.labels[u], b.labels[v]
            )));
        }
        edges.push((nu, nv));
    }
    let graph = LabeledGraph::from_edges(labels, edges)?;
    let n = g.n_questions();
    let special = (1..=n)
        .flat_map(|x| (1..=k).map(move |a| (a, x)))
        .map(|(a, x)| new_index[b.index[&special_label(a, x, k)]])
        .collect();
    let base = BaseVertex::ALL.map(|x| new_index[b.index[&VertexLabel::Base(x)]]);
    Ok(GadgetGraph {
        graph,
        game: g.clone(),
        classification,
        counts,
        members,
        special,
        base,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{
        asymmetrize, coloring_game, fixture_magic_square, fixture_tiny_unsat, fixture_trivial,
        prepare_for_coloring,
    };
    use crate::graph::{complete_graph, cycle};
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn trivial_game_has_23_vertices() {
        let gg = build_g_lambda(&fixture_trivial(2, 3)).unwrap();
        assert_eq!(gg.graph.vertex_count(), 23);
        assert_eq!(vertex_count_formula(&gg.game).unwrap(), 23);
        assert_eq!(gg.counts, GadgetCounts { base: 3, rook_first: 16, rook_later: 0, prism: 4, orthogonality: 0 });
    }

    #[test]
    fn tiny_unsat_has_53_vertices() {
        let gg = build_g_lambda(&fixture_tiny_unsat()).unwrap();
        assert_eq!(gg.classification.gadget_count(), 5);
        assert_eq!(gg.graph.vertex_count(), 53);
    }

    #[test]
    fn magic_square_counts() {
        let g = asymmetrize(&fixture_magic_square()).unwrap();
        let gg = build_g_lambda(&g).unwrap();
        assert_eq!(gg.graph.vertex_count(), 357);
        assert_eq!(vertex_count_upper_bound(&g).unwrap(), 549);
    }

    #[test]
    fn hom_k5_k4_has_338_vertices() {
        let g = prepare_for_coloring(&coloring_game(&complete_graph(5), 4)).unwrap();
        assert_eq!(build_g_lambda(&g).unwrap().graph.vertex_count(), 338);
    }

    #[test]
    fn hom_c5_k3_has_143_vertices() {
        let g = prepare_for_coloring(&coloring_game(&cycle(5), 3)).unwrap();
        assert_eq!(build_g_lambda(&g).unwrap().graph.vertex_count(), 143);
    }

    #[test]
    fn structure_of_the_trivial_gadget() {
        let gg = build_g_lambda(&fixture_trivial(2, 4)).unwrap();
        let g = &gg.graph;
        let [a, b, c] = BaseVertex::ALL.map(|x| gg.base_vertex(x));
        assert!(g.adjacent(a, b) && g.adjacent(b, c) && g.adjacent(a, c));
        let labels: HashSet<_> = g.labels().iter().collect();
        assert_eq!(labels.len(), g.vertex_count());
        // chain identification v(3,2,1,x) = v(1,1,2,x)
        for x in 1..=2 {
            let v = g.find_label(&VertexLabel::Rook { i: 1, j: 1, alpha: 2, x }).unwrap();
            assert!(gg.members[v].contains(&VertexLabel::Rook { i: 3, j: 2, alpha: 1, x }));
            assert!(g.find_label(&VertexLabel::Rook { i: 1, j: 2, alpha: 1, x }).is_none());
        }
        let specials: HashSet<_> = (1..=2)
            .flat_map(|x| (1..=4).map(move |a| (a, x)))
            .map(|(a, x)| gg.special_vertex(a, x))
            .collect();
        assert_eq!(specials.len(), 8);
        assert!(!specials.contains(&a) && !specials.contains(&b) && !specials.contains(&c));
    }

    #[test]
    fn preconditions() {
        assert!(build_g_lambda(&fixture_magic_square()).is_err());
        assert!(build_g_lambda(&fixture_trivial(2, 2)).is_err());
        assert!(build_g_lambda(&fixture_trivial(1, 3)).is_err());
    }

    fn arb_game() -> impl Strategy<Value = SynchronousGame> {
        (1usize..=3, 1usize..=4, any::<u64>(), 0.0f64..0.5).prop_map(|(n, k, seed, p)| {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = SynchronousGame::new(n, k);
            for t in g.clone().tuples() {
                if rng.random_bool(p) {
                    g.forbid(t.a, t.b, t.x, t.y);
                }
            }
            g
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn vertex_count_matches_formula(g in arb_game()) {
            let prepared = prepare_for_coloring(&g).unwrap();
            let gg = build_g_lambda(&prepared).unwrap();
            let (n, k) = (prepared.n_questions(), prepared.k_answers());
            prop_assert_eq!(gg.graph.vertex_count(), vertex_count_formula(&prepared).unwrap());
            prop_assert!(vertex_count_formula(&prepared).unwrap() <= vertex_count_upper_bound(&prepared).unwrap());
            prop_assert_eq!(gg.counts.rook_first, 8 * n);
            prop_assert_eq!(gg.counts.rook_later, 7 * n * (k - 3));
            prop_assert_eq!(gg.counts.prism, 2 * n * (k - 2));
            prop_assert_eq!(gg.counts.orthogonality, 6 * gg.classification.gadget_count());
            let labels: HashSet<_> = gg.graph.labels().iter().collect();
            prop_assert_eq!(labels.len(), gg.graph.vertex_count());
        }
    }
}
