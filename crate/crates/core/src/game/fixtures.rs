//! Shipped games: the magic-square game, a two-question unsatisfiable game,
//! games with only synchronicity rules, and graph homomorphism games.

use super::model::SynchronousGame;
use crate::graph::{complete_graph, LabeledGraph};

/// Variables (1..=9, row-major on the 3×3 square) of each magic-square
/// equation: three rows, then three columns.
pub const MAGIC_SQUARE_EQUATIONS: [[usize; 3]; 6] = [
    [1, 2, 3],
    [4, 5, 6],
    [7, 8, 9],
    [1, 4, 7],
    [2, 5, 8],
    [3, 6, 9],
];

/// Right-hand sides mod 2.
pub const MAGIC_SQUARE_PARITY: [u8; 6] = [0, 0, 0, 0, 0, 1];

const EVEN_SOLUTIONS: [[u8; 3]; 4] = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]];
const ODD_SOLUTIONS: [[u8; 3]; 4] = [[1, 1, 1], [1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// The solution of equation `x` carrying answer label `a` (both 1-based).
pub fn magic_square_solution(x: usize, a: usize) -> [u8; 3] {
    match MAGIC_SQUARE_PARITY[x - 1] {
        0 => EVEN_SOLUTIONS[a - 1],
        _ => ODD_SOLUTIONS[a - 1],
    }
}

/// The synchronous magic-square game: 6 equations, 4 labeled solutions
/// each. Two answers lose iff they assign different values to a shared
/// variable. The table is symmetric (not yet asymmetrized).
pub fn fixture_magic_square() -> SynchronousGame {
    SynchronousGame::from_fn(6, 4, |a, b, x, y| {
        if x == y {
            return a == b;
        }
        let (sa, sb) = (magic_square_solution(x, a), magic_square_solution(y, b));
        let (vx, vy) = (MAGIC_SQUARE_EQUATIONS[x - 1], MAGIC_SQUARE_EQUATIONS[y - 1]);
        for (i, v) in vx.iter().enumerate() {
            if let Some(j) = vy.iter().position(|w| w == v) {
                if sa[i] != sb[j] {
                    return false;
                }
            }
        }
        true
    })
}

/// Two questions, three answers, every cross pair forbidden for `x = 1, y = 2`
/// (already in asymmetric form).
pub fn fixture_tiny_unsat() -> SynchronousGame {
    SynchronousGame::from_fn(2, 3, |a, b, x, y| match (x, y) {
        (1, 2) => false,
        _ if x == y => a == b,
        _ => true,
    })
}

/// Only the synchronicity rules; every assignment wins.
pub fn fixture_trivial(n: usize, k: usize) -> SynchronousGame {
    SynchronousGame::new(n, k)
}

/// `Hom(G, H)`: questions are vertices of `G`, answers vertices of `H`, and
/// `(a,b,x,y)` loses iff `x = y, a ≠ b` or `x ∼ y` in `G` while `a ≁ b` in `H`.
pub fn hom_game(g: &LabeledGraph, h: &LabeledGraph) -> SynchronousGame {
    SynchronousGame::from_fn(g.vertex_count(), h.vertex_count(), |a, b, x, y| {
        if x == y {
            a == b
        } else {
            !g.adjacent(x - 1, y - 1) || h.adjacent(a - 1, b - 1)
        }
    })
}

/// The `k`-coloring game `Hom(G, K_k)`.
pub fn coloring_game(g: &LabeledGraph, k: usize) -> SynchronousGame {
    hom_game(g, &complete_graph(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::model::{validate_game, DeterministicStrategy, RuleTuple};
    use crate::game::preprocess::asymmetrize;
    use crate::graph::{complement, cycle};

    #[test]
    fn magic_square_is_valid_and_symmetric() {
        let g = fixture_magic_square();
        assert!(validate_game(&g).is_valid());
        assert!(g.tuples().all(|t| g.allows(t) == g.allows(t.mirrored())));
        // 9 row/column pairs, 8 disagreeing answer pairs each, both orders
        assert_eq!(g.off_diagonal_zero_tuples().count(), 144);
    }

    #[test]
    fn magic_square_labels_solve_their_equations() {
        for x in 1..=6 {
            for a in 1..=4 {
                let s = magic_square_solution(x, a);
                assert_eq!((s[0] + s[1] + s[2]) % 2, MAGIC_SQUARE_PARITY[x - 1]);
            }
        }
    }

    #[test]
    fn magic_square_asymmetrizes_to_72() {
        let g = asymmetrize(&fixture_magic_square()).unwrap();
        assert_eq!(g.off_diagonal_zero_tuples().count(), 72);
        assert!(g.off_diagonal_zero_tuples().all(|t| t.x < t.y));
    }

    #[test]
    fn magic_square_has_no_classical_winner() {
        let g = fixture_magic_square();
        assert!(DeterministicStrategy::enumerate(6, 4).all(|f| !f.wins(&g)));
    }

    #[test]
    fn tiny_unsat_and_trivial() {
        let t = fixture_tiny_unsat();
        assert!(validate_game(&t).is_valid());
        assert!(DeterministicStrategy::enumerate(2, 3).all(|f| !f.wins(&t)));
        let g = fixture_trivial(2, 3);
        assert!(DeterministicStrategy::enumerate(2, 3).all(|f| f.wins(&g)));
    }

    #[test]
    fn hom_k2_k3_zero_tuples() {
        let g = hom_game(&complete_graph(2), &complete_graph(3));
        let off: Vec<_> = g.off_diagonal_zero_tuples().collect();
        let mut expected = Vec::new();
        for a in 1..=3 {
            expected.push(RuleTuple::new(a, a, 1, 2));
            expected.push(RuleTuple::new(a, a, 2, 1));
        }
        expected.sort();
        assert_eq!(off, expected);
        assert!(validate_game(&g).is_valid());
    }

    #[test]
    fn coloring_game_of_c5() {
        let g = coloring_game(&cycle(5), 2);
        assert!(DeterministicStrategy::enumerate(5, 2).all(|f| !f.wins(&g)));
        let g3 = coloring_game(&cycle(5), 3);
        assert_eq!(
            DeterministicStrategy::enumerate(5, 3)
                .filter(|f| f.wins(&g3))
                .count(),
            30
        );
    }

    #[test]
    fn hom_into_complement_is_independence() {
        // K_2 -> complement(C_5): an independent pair exists in C_5
        let g = hom_game(&complete_graph(2), &complement(&cycle(5)));
        assert!(DeterministicStrategy::enumerate(2, 5).any(|f| f.wins(&g)));
        let g3 = hom_game(&complete_graph(3), &complement(&cycle(5)));
        assert!(DeterministicStrategy::enumerate(3, 5).all(|f| !f.wins(&g3)));
    }
}
