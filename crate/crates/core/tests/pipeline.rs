use syncgame_core::coloring_reduction::{
    build_g_lambda, coloring_to_strategy, operator_strategy_to_operator_coloring, strategy_to_coloring,
    DEFAULT_OPERATOR_TOL,
};
use syncgame_core::correlations::{
    correlation_from_deterministic, symmetrize_zero_knowledge, symmetrize_zero_knowledge_operator,
};
use syncgame_core::game::{
    asymmetrize, coloring_game, fixture_magic_square, fixture_tiny_unsat, parse_game,
    prepare_for_coloring, search_labeling, unpad_strategy, write_game, DeterministicStrategy,
    LabelingBudget,
};
use syncgame_core::graph::{
    cycle, is_proper_coloring, parse_coloring, parse_dimacs, parse_labels, write_coloring,
    write_dimacs, write_labels, Coloring,
};
use syncgame_core::independence::{
    build_x_graph, independence_number, independent_set_to_strategy, parse_independent_set,
    write_independent_set,
};
use syncgame_core::numerics::{mermin_peres_fixture, parse_pvm, write_pvm, PvmFamily};
use syncgame_core::solvers::{find_coloring, find_coloring_with_precolor, SearchBudget};

#[test]
fn gadget_files_round_trip() {
    let g = asymmetrize(&fixture_magic_square()).unwrap();
    let gg = build_g_lambda(&g).unwrap();
    let dimacs = write_dimacs(&gg.graph);
    let parsed = parse_dimacs(&dimacs).unwrap();
    assert_eq!(parsed.vertex_count(), 357);
    assert_eq!(parsed.edges().collect::<Vec<_>>(), gg.graph.edges().collect::<Vec<_>>());
    let labels = parse_labels(&write_labels(&gg.graph)).unwrap();
    assert_eq!(labels, gg.graph.labels());
    assert_eq!(parse_game(&write_game(&g)).unwrap(), g);
}

#[test]
fn c5_through_both_reductions() {
    let c5 = cycle(5);
    let game = coloring_game(&c5, 3);
    let prepared = prepare_for_coloring(&game).unwrap();
    let gg = build_g_lambda(&prepared).unwrap();
    assert_eq!(gg.graph.vertex_count(), 143);

    for seed in 0..5 {
        let r = find_coloring_with_precolor(
            &gg.graph,
            3,
            &gg.base_precoloring(),
            SearchBudget::default().with_seed(seed),
        );
        let c = r.outcome.found().expect("C5 is 3-colorable");
        let cert = parse_coloring(&write_coloring(c), gg.graph.vertex_count(), 3).unwrap();
        let f = unpad_strategy(&coloring_to_strategy(&gg, &cert).unwrap(), 5);
        assert!(is_proper_coloring(&c5, &Coloring::new(f.answers().to_vec(), 3)));
        assert_eq!(coloring_to_strategy(&gg, &strategy_to_coloring(&gg, &f).unwrap()).unwrap(), f);
    }

    let xg = build_x_graph(&game).unwrap();
    let alpha = independence_number(&xg.graph, SearchBudget::default());
    assert!(alpha.exact);
    assert_eq!(alpha.clique.len(), 5);
    let s = parse_independent_set(&xg, &write_independent_set(&xg, &alpha.clique)).unwrap();
    let f = independent_set_to_strategy(&game, &xg, &s).unwrap();
    assert!(is_proper_coloring(&c5, &Coloring::new(f.answers().to_vec(), 3)));
}

#[test]
fn tiny_unsat_is_unwinnable_everywhere() {
    let g = fixture_tiny_unsat();
    let gg = build_g_lambda(&g).unwrap();
    let r = find_coloring(&gg.graph, 3, SearchBudget::default());
    assert!(r.outcome.is_proven_none());
    let xg = build_x_graph(&g).unwrap();
    assert_eq!(independence_number(&xg.graph, SearchBudget::default()).clique.len(), 1);
}

#[test]
fn magic_square_labeling_search_does_not_lose_to_the_example() {
    let g = asymmetrize(&fixture_magic_square()).unwrap();
    let r = search_labeling(&g, &LabelingBudget::default()).unwrap();
    assert!(r.score <= 40, "{}", r.score);
}

#[test]
fn operator_and_classical_zero_knowledge_agree_on_scalars() {
    let c5 = cycle(5);
    let game = coloring_game(&c5, 3);
    let c = find_coloring(&c5, 3, SearchBudget::default()).outcome.found().cloned().unwrap();
    let f = DeterministicStrategy::new(c.colors().to_vec());
    assert!(correlation_from_deterministic(&f, &game).is_ok());
    let exact = symmetrize_zero_knowledge(&c5, &c).unwrap();
    let fam = PvmFamily::from_deterministic(&f, 3, 1e-12);
    let (block, p) = symmetrize_zero_knowledge_operator(&fam, 64).unwrap();
    assert_eq!(block.dim(), 6);
    for ((_, u), (_, v)) in p.entries().zip(exact.entries()) {
        assert!((u - *v.numer() as f64 / *v.denom() as f64).abs() < 1e-12);
    }
}

#[test]
fn mermin_peres_dump_survives_the_pipeline() {
    let fam = parse_pvm(&write_pvm(&mermin_peres_fixture())).unwrap();
    let gg = build_g_lambda(&asymmetrize(&fixture_magic_square()).unwrap()).unwrap();
    let report = operator_strategy_to_operator_coloring(&gg, &fam, DEFAULT_OPERATOR_TOL).unwrap();
    assert!(report.passed());
}
