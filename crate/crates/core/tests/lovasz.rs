use itertools::Itertools;

use syncgame_core::coloring_reduction::{build_g_lambda, coloring_to_strategy, strategy_to_coloring};
use syncgame_core::game::{coloring_game, prepare_for_coloring, unpad_strategy};
use syncgame_core::graph::{is_proper_coloring, Coloring, LabeledGraph};
use syncgame_core::solvers::{find_coloring, find_coloring_with_precolor, SearchBudget};

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

/// Smallest edge mask over all vertex relabelings.
fn canonical(n: usize, mask: u32) -> u32 {
    let ps = pairs(n);
    (0..n)
        .permutations(n)
        .map(|p| {
            ps.iter().enumerate().fold(0u32, |acc, (i, &(u, v))| {
                if mask >> i & 1 == 0 {
                    return acc;
                }
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                acc | 1 << ps.iter().position(|&e| e == (a, b)).unwrap()
            })
        })
        .min()
        .unwrap()
}

fn graph(n: usize, mask: u32) -> LabeledGraph {
    let edges = pairs(n).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e);
    LabeledGraph::plain(n, edges).unwrap()
}

#[test]
fn four_colorability_matches_gadget_three_colorability() {
    let k = 4;
    let budget = SearchBudget::default();
    let mut checked = 0;
    let mut colorable = 0;
    for n in 2..=6 {
        let ps = pairs(n);
        let mut classes: Vec<u32> = (0u32..1 << ps.len()).map(|m| canonical(n, m)).collect();
        classes.sort_unstable();
        classes.dedup();
        for mask in classes {
            let g = graph(n, mask);
            let direct = find_coloring(&g, k, budget);
            assert!(!direct.outcome.is_inconclusive());

            let game = prepare_for_coloring(&coloring_game(&g, k)).unwrap();
            let gg = build_g_lambda(&game).unwrap();
            assert_eq!(gg.graph.vertex_count(), 3 + n + 9 * n * (k - 2) + 6 * g.edge_count() * k);
            let gadget = find_coloring_with_precolor(&gg.graph, 3, &gg.base_precoloring(), budget);
            assert!(!gadget.outcome.is_inconclusive());
            assert_eq!(direct.outcome.is_found(), gadget.outcome.is_found(), "n={n} mask={mask:#b}");

            if let Some(c) = gadget.outcome.found() {
                let f = unpad_strategy(&coloring_to_strategy(&gg, c).unwrap(), n);
                let coloring = Coloring::new(f.answers().to_vec(), k);
                assert!(is_proper_coloring(&g, &coloring));
                assert!(strategy_to_coloring(&gg, &f).is_ok());
                colorable += 1;
            }
            checked += 1;
        }
    }
    // graphs on 2..=6 vertices up to isomorphism
    assert_eq!(checked, 2 + 4 + 11 + 34 + 156);
    assert!(colorable < checked);
}
