//! Zero-tuple classification and answer relabeling.
//!
//! A forbidden off-diagonal tuple `(a,b,x,y)` of an asymmetric game is
//! enforced in the gadget graph in one of three ways, depending only on
//! whether `a` and `b` are "end" labels (`1` or `k`) or "middle" labels
//! (`2..=k-1`). Relabeling answers per question moves tuples between the
//! classes, which changes the size of the gadget graph.

use itertools::Itertools;
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{DeterministicStrategy, RuleTuple, SynchronousGame};
use super::GameError;

/// Partition of the off-diagonal zero tuples of an asymmetric game.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ZeroTupleClassification {
    /// `(a,b) ∈ {1,k}²`: enforced by an orthogonality rook through `B`.
    pub e_set: Vec<RuleTuple>,
    /// `2 ≤ a,b ≤ k-1`: enforced by an orthogonality rook through `C`.
    pub f_set: Vec<RuleTuple>,
    /// One end label and one middle label: enforced by a direct edge.
    pub case1_set: Vec<RuleTuple>,
}

impl ZeroTupleClassification {
    /// `|E| + |F|`, the number of orthogonality rooks the gadget needs.
    pub fn gadget_count(&self) -> usize {
        self.e_set.len() + self.f_set.len()
    }

    pub fn total(&self) -> usize {
        self.gadget_count() + self.case1_set.len()
    }
}

/// Which end of the label range an answer sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelClass {
    End,
    Middle,
}

pub fn label_class(a: usize, k: usize) -> LabelClass {
    if a == 1 || a == k {
        LabelClass::End
    } else {
        LabelClass::Middle
    }
}

/// The first tuple witnessing that `g` is not asymmetric, if any.
pub fn asymmetry_defect(g: &SynchronousGame) -> Option<RuleTuple> {
    for t in g.tuples() {
        if t.x == t.y {
            if g.allows(t) != (t.a == t.b) {
                return Some(t);
            }
        } else if !g.allows(t) && !g.allows(t.mirrored()) {
            return Some(t);
        }
    }
    None
}

pub fn classify_zero_tuples(g: &SynchronousGame) -> Result<ZeroTupleClassification, GameError> {
    if let Some(t) = asymmetry_defect(g) {
        return Err(GameError::NotAsymmetric(t));
    }
    let k = g.k_answers();
    let mut out = ZeroTupleClassification::default();
    for t in g.off_diagonal_zero_tuples() {
        match (label_class(t.a, k), label_class(t.b, k)) {
            (LabelClass::End, LabelClass::End) => out.e_set.push(t),
            (LabelClass::Middle, LabelClass::Middle) => out.f_set.push(t),
            _ => out.case1_set.push(t),
        }
    }
    Ok(out)
}

/// A bijection on answers `1..=k`; `image(a)` is the new label of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnswerPermutation {
    image: Vec<usize>,
}

impl AnswerPermutation {
    pub fn identity(k: usize) -> Self {
        AnswerPermutation {
            image: (1..=k).collect(),
        }
    }

    /// `image[a-1]` is the new label of answer `a`. Returns `None` unless
    /// `image` is a bijection on `1..=image.len()`.
    pub fn new(image: Vec<usize>) -> Option<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &b in &image {
            if !(1..=k).contains(&b) || std::mem::replace(&mut seen[b - 1], true) {
                return None;
            }
        }
        Some(AnswerPermutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, a: usize) -> usize {
        self.image[a - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &b) in self.image.iter().enumerate() {
            inv[b - 1] = i + 1;
        }
        AnswerPermutation { image: inv }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }
}

/// `λ'(a,b,x,y) = λ(π_x⁻¹(a), π_y⁻¹(b), x, y)`.
pub fn relabel_answers(
    g: &SynchronousGame,
    perms: &[AnswerPermutation],
) -> Result<SynchronousGame, GameError> {
    let (n, k) = (g.n_questions(), g.k_answers());
    if perms.len() != n {
        return Err(GameError::PermutationCount {
            expected: n,
            got: perms.len(),
        });
    }
    if let Some(x) = perms.iter().position(|p| p.len() != k) {
        return Err(GameError::BadPermutation { x: x + 1, k });
    }
    let inv: Vec<_> = perms.iter().map(AnswerPermutation::inverse).collect();
    Ok(SynchronousGame::from_fn(n, k, |a, b, x, y| {
        g.rule(inv[x - 1].apply(a), inv[y - 1].apply(b), x, y)
    }))
}

/// Carries a strategy of `g` to the relabeled game: `f'(x) = π_x(f(x))`.
pub fn relabel_strategy(
    f: &DeterministicStrategy,
    perms: &[AnswerPermutation],
) -> DeterministicStrategy {
    DeterministicStrategy::new(
        f.answers()
            .iter()
            .zip(perms)
            .map(|(&a, p)| p.apply(a))
            .collect(),
    )
}

#[derive(Debug, Clone, Copy)]
pub struct LabelingBudget {
    /// Upper bound on complete assignments scored by exhaustive search;
    /// larger spaces fall back to local search.
    pub max_evaluations: u64,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for LabelingBudget {
    fn default() -> Self {
        LabelingBudget {
            max_evaluations: 5_000_000,
            restarts: 32,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LabelingResult {
    pub perms: Vec<AnswerPermutation>,
    /// `|E| + |F|` of the relabeled game, recomputed from scratch.
    pub score: usize,
    /// Whether the search space was covered completely.
    pub exhaustive: bool,
}

/// Pairwise score table: `table[x][y][sx][sy]` counts zero tuples at
/// `(x, y)` whose answers fall in the same class when question `x` sends
/// the pair `ends[sx]` to the end labels and `y` sends `ends[sy]`.
struct ScoreTable {
    n: usize,
    choices: Vec<[usize; 2]>,
    table: Vec<u32>,
}

impl ScoreTable {
    fn new(g: &SynchronousGame) -> Self {
        let (n, k) = (g.n_questions(), g.k_answers());
        let choices: Vec<[usize; 2]> = (1..=k).tuple_combinations().map(|(a, b)| [a, b]).collect();
        let c = choices.len();
        let mut table = vec![0u32; n * n * c * c];
        let zeros: Vec<RuleTuple> = g.off_diagonal_zero_tuples().collect();
        for (sx, ex) in choices.iter().enumerate() {
            for (sy, ey) in choices.iter().enumerate() {
                for t in &zeros {
                    if ex.contains(&t.a) == ey.contains(&t.b) {
                        table[((t.x - 1) * n + (t.y - 1)) * c * c + sx * c + sy] += 1;
                    }
                }
            }
        }
        ScoreTable { n, choices, table }
    }

    #[inline]
    fn pair(&self, x: usize, y: usize, sx: usize, sy: usize) -> u32 {
        let c = self.choices.len();
        self.table[(x * self.n + y) * c * c + sx * c + sy]
    }

    /// Score contribution of question `x` against every other question.
    fn local(&self, assign: &[usize], x: usize, sx: usize) -> u32 {
        (0..self.n)
            .filter(|&y| y != x)
            .map(|y| self.pair(x, y, sx, assign[y]) + self.pair(y, x, assign[y], sx))
            .sum()
    }

    fn total(&self, assign: &[usize]) -> u32 {
        let mut s = 0;
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y {
                    s += self.pair(x, y, assign[x], assign[y]);
                }
            }
        }
        s
    }
}

fn permutation_for(ends: [usize; 2], k: usize) -> AnswerPermutation {
    let mut image = vec![0; k];
    image[ends[0] - 1] = 1;
    image[ends[1] - 1] = k;
    let mut next = 2;
    for a in 1..=k {
        if !ends.contains(&a) {
            image[a - 1] = next;
            next += 1;
        }
    }
    AnswerPermutation::new(image).expect("constructed bijection")
}

/// Looks for per-question answer relabelings minimizing `|E| + |F|`.
///
/// Only the pair of answers sent to the end labels matters, so the search
/// runs over `C(k,2)` choices per question. For `k = 4` the complement of a
/// choice gives the same score, which halves the space. Exhaustive branch
/// and bound is used for `k ≤ 4` when the space fits the budget, otherwise
/// best-improvement local search with seeded restarts.
pub fn search_labeling(
    g: &SynchronousGame,
    budget: &LabelingBudget,
) -> Result<LabelingResult, GameError> {
    if let Some(t) = asymmetry_defect(g) {
        return Err(GameError::NotAsymmetric(t));
    }
    let (n, k) = (g.n_questions(), g.k_answers());
    if k < 3 || n == 0 {
        let perms = vec![AnswerPermutation::identity(k); n];
        let score = classify_zero_tuples(g)?.gadget_count();
        return Ok(LabelingResult {
            perms,
            score,
            exhaustive: true,
        });
    }
    let table = ScoreTable::new(g);
    let c = table.choices.len();
    let identity_choice = table
        .choices
        .iter()
        .position(|e| *e == [1, k])
        .expect("identity end pair");

    let space = (c as f64).powi(n as i32);
    let (assign, exhaustive) = if k <= 4 && space <= budget.max_evaluations as f64 {
        (branch_and_bound(&table, k, identity_choice), true)
    } else {
        (local_search(&table, identity_choice, budget), false)
    };

    let perms: Vec<_> = assign
        .iter()
        .map(|&s| permutation_for(table.choices[s], k))
        .collect();
    let relabeled = relabel_answers(g, &perms)?;
    let score = classify_zero_tuples(&relabeled)?.gadget_count();
    debug_assert_eq!(score as u32, table.total(&assign));
    Ok(LabelingResult {
        perms,
        score,
        exhaustive,
    })
}

fn branch_and_bound(table: &ScoreTable, k: usize, identity_choice: usize) -> Vec<usize> {
    let n = table.n;
    let c = table.choices.len();
    let mut best = vec![identity_choice; n];
    let mut best_score = table.total(&best);
    let mut assign = vec![0usize; n];

    // For k = 4 complementing every choice swaps E and F; keep the half
    // where question 1 sends answer 1 to an end label.
    let first_choices: Vec<usize> = (0..c)
        .filter(|&s| k != 4 || table.choices[s].contains(&1))
        .collect();

    fn rec(
        table: &ScoreTable,
        depth: usize,
        partial: u32,
        assign: &mut Vec<usize>,
        first_choices: &[usize],
        best: &mut Vec<usize>,
        best_score: &mut u32,
    ) {
        if partial >= *best_score {
            return;
        }
        let n = table.n;
        if depth == n {
            *best_score = partial;
            best.clone_from(assign);
            return;
        }
        let candidates: Vec<usize> = if depth == 0 {
            first_choices.to_vec()
        } else {
            (0..table.choices.len()).collect()
        };
        for s in candidates {
            let add: u32 = (0..depth)
                .map(|y| table.pair(depth, y, s, assign[y]) + table.pair(y, depth, assign[y], s))
                .sum();
            assign[depth] = s;
            rec(table, depth + 1, partial + add, assign, first_choices, best, best_score);
        }
    }

    rec(
        table,
        0,
        0,
        &mut assign,
        &first_choices,
        &mut best,
        &mut best_score,
    );
    best
}

fn local_search(table: &ScoreTable, identity_choice: usize, budget: &LabelingBudget) -> Vec<usize> {
    let n = table.n;
    let c = table.choices.len();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut best = vec![identity_choice; n];
    let mut best_score = table.total(&best);
    let mut evaluations = 0u64;

    for restart in 0..=budget.restarts {
        let mut assign: Vec<usize> = if restart == 0 {
            vec![identity_choice; n]
        } else {
            let all: Vec<usize> = (0..c).collect();
            (0..n).map(|_| *all.choose(&mut rng).unwrap()).collect()
        };
        loop {
            let mut improved = false;
            for x in 0..n {
                let current = table.local(&assign, x, assign[x]);
                let (s_best, v_best) = (0..c)
                    .map(|s| (s, table.local(&assign, x, s)))
                    .min_by_key(|&(s, v)| (v, s != assign[x]))
                    .unwrap();
                evaluations += c as u64;
                if v_best < current {
                    assign[x] = s_best;
                    improved = true;
                }
            }
            if !improved || evaluations > budget.max_evaluations {
                break;
            }
        }
        let score = table.total(&assign);
        if score < best_score {
            best_score = score;
            best = assign;
        }
        if evaluations > budget.max_evaluations {
            break;
        }
    }
    best
}
