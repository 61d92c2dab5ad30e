use std::fmt;

use crate::bitset::BitSet;

/// A rule-table entry `(a, b, x, y)`: answers `a`, `b` to questions `x`, `y`.
///
/// All four indices are 1-based. The derived ordering is lexicographic in
/// field order, which is the order every writer in this crate emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleTuple {
    pub a: usize,
    pub b: usize,
    pub x: usize,
    pub y: usize,
}

impl RuleTuple {
    pub const fn new(a: usize, b: usize, x: usize, y: usize) -> Self {
        RuleTuple { a, b, x, y }
    }

    /// The same constraint seen from the other player: `(b, a, y, x)`.
    pub const fn mirrored(self) -> Self {
        RuleTuple::new(self.b, self.a, self.y, self.x)
    }
}

impl fmt::Display for RuleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a, self.b, self.x, self.y)
    }
}

/// A synchronous game with `n` questions, `k` answers and a 0/1 rule table.
///
/// The table is stored densely as a bit set of "allowed" flags over all
/// `k²n²` tuples. Questions and answers are 1-based throughout the public API.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SynchronousGame {
    n: usize,
    k: usize,
    allowed: BitSet,
}

impl fmt::Debug for SynchronousGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SynchronousGame")
            .field("n", &self.n)
            .field("k", &self.k)
            .field("zeros", &self.zero_tuples().collect::<Vec<_>>())
            .finish()
    }
}

impl SynchronousGame {
    /// The game whose only forbidden tuples are the synchronicity ones.
    pub fn new(n_questions: usize, k_answers: usize) -> Self {
        Self::from_fn(n_questions, k_answers, |a, b, x, y| x != y || a == b)
    }

    /// Builds a raw table from a predicate. The result is not checked; use
    /// [`validate_game`] to inspect it.
    pub fn from_fn(
        n_questions: usize,
        k_answers: usize,
        mut rule: impl FnMut(usize, usize, usize, usize) -> bool,
    ) -> Self {
        let (n, k) = (n_questions, k_answers);
        let mut allowed = BitSet::new(n * n * k * k);
        let mut g = SynchronousGame {
            n,
            k,
            allowed: BitSet::new(0),
        };
        for x in 1..=n {
            for y in 1..=n {
                for a in 1..=k {
                    for b in 1..=k {
                        if rule(a, b, x, y) {
                            allowed.insert(g.index(a, b, x, y));
                        }
                    }
                }
            }
        }
        g.allowed = allowed;
        g
    }

    #[inline]
    pub fn n_questions(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k_answers(&self) -> usize {
        self.k
    }

    #[inline]
    fn index(&self, a: usize, b: usize, x: usize, y: usize) -> usize {
        assert!(
            (1..=self.k).contains(&a)
                && (1..=self.k).contains(&b)
                && (1..=self.n).contains(&x)
                && (1..=self.n).contains(&y),
            "rule index ({a},{b},{x},{y}) out of range for n={}, k={}",
            self.n,
            self.k
        );
        (((x - 1) * self.n + (y - 1)) * self.k + (a - 1)) * self.k + (b - 1)
    }

    /// `λ(a,b,x,y)`: whether answering `(a, b)` to `(x, y)` wins.
    #[inline]
    pub fn rule(&self, a: usize, b: usize, x: usize, y: usize) -> bool {
        self.allowed.contains(self.index(a, b, x, y))
    }

    #[inline]
    pub fn allows(&self, t: RuleTuple) -> bool {
        self.rule(t.a, t.b, t.x, t.y)
    }

    pub fn set_rule(&mut self, a: usize, b: usize, x: usize, y: usize, value: bool) {
        let i = self.index(a, b, x, y);
        self.allowed.set(i, value);
    }

    pub fn forbid(&mut self, a: usize, b: usize, x: usize, y: usize) {
        self.set_rule(a, b, x, y, false);
    }

    /// Every tuple in the table, in lexicographic `(a,b,x,y)` order.
    pub fn tuples(&self) -> impl Iterator<Item = RuleTuple> + '_ {
        let (n, k) = (self.n, self.k);
        (1..=k).flat_map(move |a| {
            (1..=k).flat_map(move |b| {
                (1..=n).flat_map(move |x| (1..=n).map(move |y| RuleTuple::new(a, b, x, y)))
            })
        })
    }

    /// All tuples with rule value 0, sorted lexicographically.
    pub fn zero_tuples(&self) -> impl Iterator<Item = RuleTuple> + '_ {
        self.tuples().filter(move |&t| !self.allows(t))
    }

    /// Zero tuples with `x ≠ y`.
    pub fn off_diagonal_zero_tuples(&self) -> impl Iterator<Item = RuleTuple> + '_ {
        self.zero_tuples().filter(|t| t.x != t.y)
    }

    /// `λ(a,a,x,x) = 1` for every answer and question.
    pub fn has_unit_diagonal(&self) -> bool {
        (1..=self.n).all(|x| (1..=self.k).all(|a| self.rule(a, a, x, x)))
    }

    /// Checks the three clauses of an asymmetric rule function against the
    /// table itself (the product clause is checked by [`Self::is_asymmetrization_of`]).
    pub fn is_asymmetric(&self) -> bool {
        for x in 1..=self.n {
            for a in 1..=self.k {
                for b in 1..=self.k {
                    if self.rule(a, b, x, x) != (a == b) {
                        return false;
                    }
                }
            }
        }
        self.off_diagonal_zero_tuples()
            .all(|t| self.allows(t.mirrored()))
    }

    /// Whether `self` is an asymmetric rule function for `original`:
    /// asymmetric, and `λ'(t)λ'(t̄) = λ(t)λ(t̄)` for every tuple `t`.
    pub fn is_asymmetrization_of(&self, original: &SynchronousGame) -> bool {
        self.n == original.n
            && self.k == original.k
            && self.is_asymmetric()
            && self.tuples().all(|t| {
                (self.allows(t) && self.allows(t.mirrored()))
                    == (original.allows(t) && original.allows(t.mirrored()))
            })
    }
}

/// A classical strategy: one answer per question.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    answers: Vec<usize>,
}

impl DeterministicStrategy {
    /// `answers[x-1]` is the answer to question `x`; answers are 1-based.
    pub fn new(answers: Vec<usize>) -> Self {
        DeterministicStrategy { answers }
    }

    pub fn answer(&self, x: usize) -> usize {
        self.answers[x - 1]
    }

    pub fn answers(&self) -> &[usize] {
        &self.answers
    }

    pub fn n_questions(&self) -> usize {
        self.answers.len()
    }

    /// Total over `g`'s questions with every answer in range.
    pub fn fits(&self, g: &SynchronousGame) -> bool {
        self.answers.len() == g.n_questions()
            && self.answers.iter().all(|&a| (1..=g.k_answers()).contains(&a))
    }

    /// `λ(f(x), f(y), x, y) = 1` for every pair of questions.
    pub fn wins(&self, g: &SynchronousGame) -> bool {
        self.first_loss(g).is_none() && self.fits(g)
    }

    /// The first losing tuple in lexicographic `(x, y)` order, if any.
    pub fn first_loss(&self, g: &SynchronousGame) -> Option<RuleTuple> {
        if !self.fits(g) {
            return None;
        }
        let n = g.n_questions();
        (1..=n)
            .flat_map(|x| (1..=n).map(move |y| (x, y)))
            .map(|(x, y)| RuleTuple::new(self.answer(x), self.answer(y), x, y))
            .find(|&t| !g.allows(t))
    }

    /// Every assignment for `n` questions and `k` answers, in lexicographic order.
    pub fn enumerate(n: usize, k: usize) -> impl Iterator<Item = DeterministicStrategy> {
        let total = k.checked_pow(n as u32).expect("strategy space overflows");
        (0..total).map(move |mut code| {
            let mut answers = vec![0; n];
            for slot in answers.iter_mut().rev() {
                *slot = code % k + 1;
                code /= k;
            }
            DeterministicStrategy::new(answers)
        })
    }
}

/// One invariant violation found by [`validate_game`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyQuestionSet,
    EmptyAnswerSet,
    /// `λ(a,b,x,x) = 1` with `a ≠ b`.
    NonSynchronous(RuleTuple),
    /// A tuple referenced outside `1..=k` / `1..=n` (raised by parsers).
    OutOfRange(RuleTuple),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyQuestionSet => write!(f, "game has no questions"),
            Violation::EmptyAnswerSet => write!(f, "game has no answers"),
            Violation::NonSynchronous(t) => {
                write!(f, "synchronicity violated: rule{t} = 1 with a != b")
            }
            Violation::OutOfRange(t) => write!(f, "tuple {t} out of range"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every violated invariant of `g`. An empty report means `g` is a
/// valid synchronous game.
pub fn validate_game(g: &SynchronousGame) -> ValidationReport {
    let mut violations = Vec::new();
    if g.n_questions() == 0 {
        violations.push(Violation::EmptyQuestionSet);
    }
    if g.k_answers() == 0 {
        violations.push(Violation::EmptyAnswerSet);
    }
    for x in 1..=g.n_questions() {
        for a in 1..=g.k_answers() {
            for b in 1..=g.k_answers() {
                if a != b && g.rule(a, b, x, x) {
                    violations.push(Violation::NonSynchronous(RuleTuple::new(a, b, x, x)));
                }
            }
        }
    }
    ValidationReport { violations }
}
