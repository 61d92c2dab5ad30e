//! Rule-table rewrites that preserve the game algebra: diagonal repair,
//! padding to at least two questions / three answers, and asymmetrization.

use super::model::{validate_game, DeterministicStrategy, SynchronousGame};
use super::GameError;

fn require_valid(g: &SynchronousGame) -> Result<(), GameError> {
    let report = validate_game(g);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(GameError::Invalid(v.to_string())),
    }
}

/// The question whose rules absorb a repaired diagonal entry of question `x`.
pub fn replacement_question(x: usize, n: usize) -> usize {
    x % n + 1
}

/// Rewrites every `λ(a,a,x,x) = 0` as `λ(a,a,x,x) = 1` together with
/// `λ(a,b,x,y) = 0` for all `b`, where `y = (x mod n) + 1`.
pub fn normalize_diagonal(g: &SynchronousGame) -> Result<SynchronousGame, GameError> {
    require_valid(g)?;
    let (n, k) = (g.n_questions(), g.k_answers());
    if n < 2 {
        return Err(GameError::TooFewQuestions(n));
    }
    let mut out = g.clone();
    for x in 1..=n {
        for a in 1..=k {
            if !g.rule(a, a, x, x) {
                out.set_rule(a, a, x, x, true);
                let y = replacement_question(x, n);
                for b in 1..=k {
                    out.forbid(a, b, x, y);
                }
            }
        }
    }
    Ok(out)
}

/// Enlarges `g` to at least `min_questions` questions and `min_answers`
/// answers without changing which classical strategies win (up to the
/// forced answers on the new coordinates).
///
/// New questions admit only answer 1: `λ(a,b,x',y) = λ(b,a,y,x') = 0` for
/// `a ≠ 1` and every `y ≠ x'`. New answers lose against everything
/// off-diagonal; when the padded game still has one question they are
/// instead removed on the diagonal.
pub fn pad_game(
    g: &SynchronousGame,
    min_questions: usize,
    min_answers: usize,
) -> Result<SynchronousGame, GameError> {
    require_valid(g)?;
    let (n, k) = (g.n_questions(), g.k_answers());
    let n2 = n.max(min_questions);
    let k2 = k.max(min_answers);
    if (n2, k2) == (n, k) {
        return Ok(g.clone());
    }
    Ok(SynchronousGame::from_fn(n2, k2, |a, b, x, y| {
        if x == y {
            if a != b {
                return false;
            }
            if a > k {
                return n2 >= 2;
            }
            return x > n || g.rule(a, a, x, x);
        }
        if a > k || b > k {
            return false;
        }
        if (x > n && a != 1) || (y > n && b != 1) {
            return false;
        }
        if x > n || y > n {
            return true;
        }
        g.rule(a, b, x, y)
    }))
}

/// The asymmetric rule function
/// `λ'(a,b,x,x) = δ_ab`, `λ'(a,b,x,y) = λ(a,b,x,y)·λ(b,a,y,x)` for `x < y`,
/// and `λ'(a,b,x,y) = 1` for `x > y`.
pub fn asymmetrize(g: &SynchronousGame) -> Result<SynchronousGame, GameError> {
    require_valid(g)?;
    let (n, k) = (g.n_questions(), g.k_answers());
    if n < 2 {
        return Err(GameError::TooFewQuestions(n));
    }
    for x in 1..=n {
        for a in 1..=k {
            if !g.rule(a, a, x, x) {
                return Err(GameError::DiagonalZero { a, x });
            }
        }
    }
    let out = SynchronousGame::from_fn(n, k, |a, b, x, y| match x.cmp(&y) {
        std::cmp::Ordering::Equal => a == b,
        std::cmp::Ordering::Less => g.rule(a, b, x, y) && g.rule(b, a, y, x),
        std::cmp::Ordering::Greater => true,
    });
    debug_assert!(out.is_asymmetrization_of(g));
    Ok(out)
}

/// The preprocessing chain used before building a gadget graph:
/// pad to `n ≥ 2, k ≥ 3`, repair the diagonal, then asymmetrize.
pub fn prepare_for_coloring(g: &SynchronousGame) -> Result<SynchronousGame, GameError> {
    let padded = pad_game(g, 2, 3)?;
    let normalized = normalize_diagonal(&padded)?;
    asymmetrize(&normalized)
}

/// Carries a strategy of the original game to the padded game: new
/// questions answer 1.
pub fn pad_strategy(f: &DeterministicStrategy, n_questions: usize) -> DeterministicStrategy {
    let mut answers = f.answers().to_vec();
    answers.resize(n_questions.max(answers.len()), 1);
    DeterministicStrategy::new(answers)
}

/// Drops the answers to padding questions.
pub fn unpad_strategy(f: &DeterministicStrategy, n_questions: usize) -> DeterministicStrategy {
    DeterministicStrategy::new(f.answers()[..n_questions].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::model::RuleTuple;

    fn winnable(g: &SynchronousGame) -> bool {
        DeterministicStrategy::enumerate(g.n_questions(), g.k_answers()).any(|f| f.wins(g))
    }

    /// Every valid synchronous game with the given shape: the `a ≠ b`
    /// diagonal entries are pinned to 0 and all other entries range freely.
    fn all_valid_games(n: usize, k: usize) -> impl Iterator<Item = SynchronousGame> {
        let free: Vec<RuleTuple> = SynchronousGame::new(n, k)
            .tuples()
            .filter(|t| t.x != t.y || t.a == t.b)
            .collect();
        assert!(free.len() < 32);
        (0u64..1 << free.len()).map(move |mask| {
            let mut g = SynchronousGame::new(n, k);
            for (i, t) in free.iter().enumerate() {
                g.set_rule(t.a, t.b, t.x, t.y, mask >> i & 1 == 1);
            }
            g
        })
    }

    #[test]
    fn normalize_is_identity_on_unit_diagonal() {
        let g = SynchronousGame::new(3, 3);
        assert_eq!(normalize_diagonal(&g).unwrap(), g);
    }

    #[test]
    fn normalize_moves_diagonal_zero_off_diagonal() {
        let mut g = SynchronousGame::new(2, 3);
        g.forbid(2, 2, 1, 1);
        let h = normalize_diagonal(&g).unwrap();
        assert!(h.rule(2, 2, 1, 1));
        for b in 1..=3 {
            assert!(!h.rule(2, b, 1, 2));
        }
        assert!(h.has_unit_diagonal());
        // nothing else changed
        let changed = h
            .tuples()
            .filter(|&t| h.allows(t) != g.allows(t))
            .count();
        assert_eq!(changed, 1 + 3);
    }

    #[test]
    fn normalize_requires_two_questions() {
        let g = SynchronousGame::new(1, 3);
        assert_eq!(normalize_diagonal(&g), Err(GameError::TooFewQuestions(1)));
    }

    #[test]
    fn normalize_preserves_winnability_exhaustively_n2_k2() {
        let mut count = 0;
        for g in all_valid_games(2, 2) {
            let h = normalize_diagonal(&g).unwrap();
            assert_eq!(winnable(&g), winnable(&h), "{g:?}");
            count += 1;
        }
        assert_eq!(count, 1 << 12);
    }

    #[test]
    fn pad_is_identity_when_large_enough() {
        let g = SynchronousGame::new(2, 3);
        assert_eq!(pad_game(&g, 2, 3).unwrap(), g);
    }

    #[test]
    fn pad_adds_question_allowing_only_first_answer() {
        let g = SynchronousGame::new(1, 3);
        let h = pad_game(&g, 2, 3).unwrap();
        assert_eq!(h.n_questions(), 2);
        let winners: Vec<_> = DeterministicStrategy::enumerate(2, 3)
            .filter(|f| f.wins(&h))
            .collect();
        assert_eq!(winners.len(), 3);
        assert!(winners.iter().all(|f| f.answer(2) == 1));
    }

    #[test]
    fn pad_preserves_winnability_for_single_question_games() {
        for k in 1..=3 {
            for g in all_valid_games(1, k) {
                for (mq, ma) in [(1, 3), (2, 3), (3, 4), (2, 1)] {
                    let h = pad_game(&g, mq, ma).unwrap();
                    assert!(validate_game(&h).is_valid());
                    assert_eq!(winnable(&g), winnable(&h), "{g:?} -> {h:?}");
                }
            }
        }
    }

    #[test]
    fn pad_preserves_winnability_n2_k2() {
        for g in all_valid_games(2, 2) {
            let h = pad_game(&g, 3, 3).unwrap();
            assert_eq!(winnable(&g), winnable(&h));
        }
    }

    #[test]
    fn asymmetrize_direct_formula() {
        let mut g = SynchronousGame::new(2, 2);
        g.forbid(1, 2, 1, 2);
        let h = asymmetrize(&g).unwrap();
        assert!(!h.rule(1, 2, 1, 2));
        assert!(h.rule(2, 1, 2, 1));
        assert!(h.is_asymmetrization_of(&g));
    }

    #[test]
    fn asymmetrize_moves_lower_zeros_to_upper_mirror() {
        let mut g = SynchronousGame::new(3, 2);
        g.forbid(1, 2, 3, 1);
        g.forbid(2, 2, 2, 1);
        let h = asymmetrize(&g).unwrap();
        let zeros: Vec<_> = h.off_diagonal_zero_tuples().collect();
        assert_eq!(
            zeros,
            vec![RuleTuple::new(2, 1, 1, 3), RuleTuple::new(2, 2, 1, 2)]
        );
    }

    #[test]
    fn asymmetrize_rejects_diagonal_zero() {
        let mut g = SynchronousGame::new(2, 2);
        g.forbid(1, 1, 2, 2);
        assert_eq!(asymmetrize(&g), Err(GameError::DiagonalZero { a: 1, x: 2 }));
    }

    #[test]
    fn asymmetrize_is_idempotent_and_preserves_winners() {
        for g in all_valid_games(2, 2) {
            let Ok(h) = asymmetrize(&g) else { continue };
            assert_eq!(asymmetrize(&h).unwrap(), h);
            for f in DeterministicStrategy::enumerate(2, 2) {
                assert_eq!(f.wins(&g), f.wins(&h));
            }
        }
    }
}
