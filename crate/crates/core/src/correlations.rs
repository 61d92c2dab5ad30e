//! Synchronous correlations `p(a,b|x,y)` as explicit tensors, the perfect
//! zero-knowledge symmetrizer, and honest-verifier views.

use std::fmt::Write as _;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::game::{DeterministicStrategy, RuleTuple, SynchronousGame};
use crate::graph::{is_proper_coloring, Coloring, LabeledGraph};
use crate::numerics::{correlation_from_tracial, linalg, NumericsError, PvmFamily};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrelationError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("weights must be nonnegative and sum to 1")]
    BadWeights,
    #[error("negative probability at {0}")]
    Negative(RuleTuple),
    #[error("p(.,.|{x},{y}) does not sum to 1")]
    NotNormalized { x: usize, y: usize },
    #[error("synchronicity fails at {0}")]
    NotSynchronous(RuleTuple),
    #[error("coloring is not a proper {0}-coloring")]
    ImproperColoring(usize),
    #[error("block dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// A tensor `p(a,b|x,y)` over `n` questions and `k` answers, indexed like
/// the rule table of a game.
#[derive(Debug, Clone, PartialEq)]
pub struct SynchronousCorrelation<T> {
    n: usize,
    k: usize,
    p: Vec<T>,
}

impl<T: Clone> SynchronousCorrelation<T> {
    pub fn from_fn(n: usize, k: usize, mut f: impl FnMut(usize, usize, usize, usize) -> T) -> Self {
        let mut p = Vec::with_capacity(n * n * k * k);
        for x in 1..=n {
            for y in 1..=n {
                for a in 1..=k {
                    for b in 1..=k {
                        p.push(f(a, b, x, y));
                    }
                }
            }
        }
        SynchronousCorrelation { n, k, p }
    }

    pub fn n_questions(&self) -> usize {
        self.n
    }

    pub fn k_answers(&self) -> usize {
        self.k
    }

    #[inline]
    fn index(&self, a: usize, b: usize, x: usize, y: usize) -> usize {
        (((x - 1) * self.n + (y - 1)) * self.k + (a - 1)) * self.k + (b - 1)
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, x: usize, y: usize) -> &T {
        &self.p[self.index(a, b, x, y)]
    }

    /// `(tuple, value)` pairs sorted by `(a, b, x, y)`.
    pub fn entries(&self) -> impl Iterator<Item = (RuleTuple, &T)> + '_ {
        let (n, k) = (self.n, self.k);
        (1..=k)
            .cartesian_product(1..=k)
            .cartesian_product((1..=n).cartesian_product(1..=n))
            .map(move |((a, b), (x, y))| (RuleTuple::new(a, b, x, y), self.get(a, b, x, y)))
    }
}

/// Scalar operations the correlation checks need, so one implementation
/// serves both exact rationals and floats.
pub trait Probability: Clone + PartialOrd + Zero + One + std::ops::Sub<Output = Self> {
    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }
}

impl Probability for Rational {}
impl Probability for f64 {}

impl<T: Probability> SynchronousCorrelation<T> {
    /// Nonnegativity, normalization of every `(x,y)` block, and
    /// `p(a,b|x,x) = 0` for `a ≠ b`, each up to `tol`.
    pub fn check_invariants(&self, tol: &T) -> Result<(), CorrelationError> {
        let neg_tol = T::zero() - tol.clone();
        for x in 1..=self.n {
            for y in 1..=self.n {
                let mut sum = T::zero();
                for a in 1..=self.k {
                    for b in 1..=self.k {
                        let v = self.get(a, b, x, y);
                        let t = RuleTuple::new(a, b, x, y);
                        if *v < neg_tol {
                            return Err(CorrelationError::Negative(t));
                        }
                        if x == y && a != b && v > tol {
                            return Err(CorrelationError::NotSynchronous(t));
                        }
                        sum = sum + v.clone();
                    }
                }
                if sum.abs_diff(&T::one()) > *tol {
                    return Err(CorrelationError::NotNormalized { x, y });
                }
            }
        }
        Ok(())
    }

    /// True iff `p(a,b|x,y) ≤ tol` on every forbidden tuple of `g`.
    pub fn is_winning(&self, g: &SynchronousGame, tol: &T) -> bool {
        self.n == g.n_questions()
            && self.k == g.k_answers()
            && g.zero_tuples().all(|t| self.get(t.a, t.b, t.x, t.y) <= tol)
    }

    /// Largest value the correlation puts on a forbidden tuple.
    pub fn max_loss(&self, g: &SynchronousGame) -> T {
        g.zero_tuples()
            .map(|t| self.get(t.a, t.b, t.x, t.y).clone())
            .fold(T::zero(), |m, v| if v > m { v } else { m })
    }
}

/// `p(a,b|x,y) = [f(x)=a][f(y)=b]` over the questions and answers of `g`.
pub fn correlation_from_deterministic(
    f: &DeterministicStrategy,
    g: &SynchronousGame,
) -> Result<SynchronousCorrelation<Rational>, CorrelationError> {
    if !f.fits(g) {
        return Err(CorrelationError::DimensionMismatch(format!(
            "strategy with {} answers does not fit a game with n={}, k={}",
            f.n_questions(),
            g.n_questions(),
            g.k_answers()
        )));
    }
    Ok(SynchronousCorrelation::from_fn(g.n_questions(), g.k_answers(), |a, b, x, y| {
        if f.answer(x) == a && f.answer(y) == b {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// Convex combination `Σ wᵢ pᵢ`.
pub fn mix<T>(
    parts: &[SynchronousCorrelation<T>],
    weights: &[T],
) -> Result<SynchronousCorrelation<T>, CorrelationError>
where
    T: Probability + std::ops::Mul<Output = T>,
{
    let first = parts
        .first()
        .ok_or_else(|| CorrelationError::DimensionMismatch("nothing to mix".into()))?;
    if parts.len() != weights.len() {
        return Err(CorrelationError::DimensionMismatch(format!(
            "{} correlations but {} weights",
            parts.len(),
            weights.len()
        )));
    }
    if let Some(p) = parts.iter().find(|p| (p.n, p.k) != (first.n, first.k)) {
        return Err(CorrelationError::DimensionMismatch(format!(
            "(n,k) = ({},{}) vs ({},{})",
            p.n, p.k, first.n, first.k
        )));
    }
    let total = weights.iter().fold(T::zero(), |s, w| s + w.clone());
    if weights.iter().any(|w| *w < T::zero()) || total != T::one() {
        return Err(CorrelationError::BadWeights);
    }
    let p = (0..first.p.len())
        .map(|i| {
            parts
                .iter()
                .zip(weights)
                .fold(T::zero(), |s, (c, w)| s + w.clone() * c.p[i].clone())
        })
        .collect();
    Ok(SynchronousCorrelation {
        n: first.n,
        k: first.k,
        p,
    })
}

/// Averages the deterministic correlation of a proper `k`-coloring over all
/// relabelings of the colors:
/// `p(a,b|x,y) = (1/k!) Σ_σ [σ(c(x))=a][σ(c(y))=b]`.
pub fn symmetrize_zero_knowledge(
    g: &LabeledGraph,
    c: &Coloring,
) -> Result<SynchronousCorrelation<Rational>, CorrelationError> {
    let k = c.palette();
    if !is_proper_coloring(g, c) {
        return Err(CorrelationError::ImproperColoring(k));
    }
    // The average depends only on the pair of colors, so tabulate it once.
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let weight = Rational::new(1, perms.len() as i64);
    let mut table = vec![Rational::zero(); k.pow(4)];
    let at = |ca: usize, cb: usize, a: usize, b: usize| ((ca * k + cb) * k + a) * k + b;
    for sigma in &perms {
        for ca in 0..k {
            for cb in 0..k {
                table[at(ca, cb, sigma[ca], sigma[cb])] += weight;
            }
        }
    }
    Ok(SynchronousCorrelation::from_fn(g.vertex_count(), k, |a, b, x, y| {
        table[at(c.color(x - 1) - 1, c.color(y - 1) - 1, a - 1, b - 1)]
    }))
}

/// The operator version: `F_{a,x} = ⊕_σ E_{σ(a),x}` on `k!` blocks, with the
/// correlation taken in the normalized trace. Returns the block family and
/// its correlation.
pub fn symmetrize_zero_knowledge_operator(
    fam: &PvmFamily,
    dim_cap: usize,
) -> Result<(PvmFamily, SynchronousCorrelation<f64>), CorrelationError> {
    let (n, k, d) = (fam.n_questions(), fam.k_answers(), fam.dim());
    let perms: Vec<Vec<usize>> = (0..k).permutations(k).collect();
    let dim = perms.len() * d;
    if dim > dim_cap {
        return Err(CorrelationError::DimensionCap { dim, cap: dim_cap });
    }
    let mut projectors = Vec::with_capacity(n * k);
    for x in 1..=n {
        for a in 1..=k {
            let blocks: Vec<_> = perms
                .iter()
                .map(|sigma| fam.projector(sigma[a - 1] + 1, x).clone())
                .collect();
            projectors.push(linalg::direct_sum(&blocks));
        }
    }
    let block = PvmFamily::new(dim, n, k, projectors, fam.tol())?;
    let p = correlation_from_tracial(&block)?;
    Ok((block, p))
}

/// Restriction of a correlation to the question pairs where the players
/// could lose, i.e. pairs `(x,y)` with some forbidden `(a,b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HonestView<T> {
    pub k: usize,
    /// `((x, y), p(·,·|x,y))` with the `k²` values in `(a, b)` order.
    pub blocks: Vec<((usize, usize), Vec<T>)>,
}

impl<T> HonestView<T> {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.iter().map(|(xy, _)| *xy)
    }
}

pub fn honest_verifier_view<T: Clone>(
    p: &SynchronousCorrelation<T>,
    g: &SynchronousGame,
) -> Result<HonestView<T>, CorrelationError> {
    let (n, k) = (g.n_questions(), g.k_answers());
    if (p.n, p.k) != (n, k) {
        return Err(CorrelationError::DimensionMismatch(format!(
            "correlation is ({},{}), game is ({n},{k})",
            p.n, p.k
        )));
    }
    let mut blocks = Vec::new();
    for x in 1..=n {
        for y in 1..=n {
            let risky = (1..=k).cartesian_product(1..=k).any(|(a, b)| !g.rule(a, b, x, y));
            if risky {
                let values = (1..=k)
                    .cartesian_product(1..=k)
                    .map(|(a, b)| p.get(a, b, x, y).clone())
                    .collect();
                blocks.push(((x, y), values));
            }
        }
    }
    Ok(HonestView { k, blocks })
}

/// TSV lines `a b x y numerator denominator`, sorted by `(a,b,x,y)`.
pub fn write_rational_tsv(p: &SynchronousCorrelation<Rational>) -> String {
    let mut out = String::new();
    for (t, v) in p.entries() {
        writeln!(out, "{}\t{}\t{}\t{}\t{}\t{}", t.a, t.b, t.x, t.y, v.numer(), v.denom()).unwrap();
    }
    out
}

/// TSV lines `a b x y value`, sorted by `(a,b,x,y)`.
pub fn write_float_tsv(p: &SynchronousCorrelation<f64>) -> String {
    let mut out = String::new();
    for (t, v) in p.entries() {
        writeln!(out, "{}\t{}\t{}\t{}\t{v:e}", t.a, t.b, t.x, t.y).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{coloring_game, fixture_trivial};
    use crate::graph::{complete_graph, cycle};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn proper_colorings(g: &LabeledGraph, k: usize) -> Vec<Coloring> {
        let n = g.vertex_count();
        (0..k.pow(n as u32))
            .map(|mut code| {
                let colors = (0..n)
                    .map(|_| {
                        let c = code % k + 1;
                        code /= k;
                        c
                    })
                    .collect();
                Coloring::new(colors, k)
            })
            .filter(|c| is_proper_coloring(g, c))
            .collect()
    }

    #[test]
    fn deterministic_correlation() {
        let g = fixture_trivial(2, 3);
        let f = DeterministicStrategy::new(vec![1, 1]);
        let p = correlation_from_deterministic(&f, &g).unwrap();
        assert_eq!(*p.get(1, 1, 1, 2), r(1, 1));
        assert_eq!(*p.get(1, 2, 1, 2), r(0, 1));
        p.check_invariants(&Rational::zero()).unwrap();
        assert!(p.is_winning(&g, &Rational::zero()));
    }

    #[test]
    fn winning_matches_rule_check_exhaustively() {
        use crate::game::SynchronousGame;
        // every n=2, k=2 game, every strategy
        for mask in 0u32..1 << 16 {
            let g = SynchronousGame::from_fn(2, 2, |a, b, x, y| {
                mask >> ((((x - 1) * 2 + (y - 1)) * 2 + (a - 1)) * 2 + (b - 1)) & 1 == 1
            });
            for f in DeterministicStrategy::enumerate(2, 2) {
                let p = correlation_from_deterministic(&f, &g).unwrap();
                assert_eq!(p.is_winning(&g, &Rational::zero()), f.wins(&g));
            }
        }
    }

    #[test]
    fn uniform_mix_of_trivial_strategies() {
        let g = fixture_trivial(2, 3);
        let parts: Vec<_> = DeterministicStrategy::enumerate(2, 3)
            .map(|f| correlation_from_deterministic(&f, &g).unwrap())
            .collect();
        let w = vec![r(1, 9); 9];
        let p = mix(&parts, &w).unwrap();
        p.check_invariants(&Rational::zero()).unwrap();
        assert!(p.is_winning(&g, &Rational::zero()));
        for a in 1..=3 {
            for b in 1..=3 {
                assert_eq!(*p.get(a, b, 1, 2), r(1, 9));
            }
            assert_eq!(*p.get(a, a, 1, 1), r(1, 3));
        }
        assert!(mix(&parts[..2], &[r(1, 2), r(1, 3)]).is_err());
        assert!(mix(&parts[..2], &[r(3, 2), r(-1, 2)]).is_err());
    }

    #[test]
    fn zero_knowledge_values_on_c5() {
        let g = cycle(5);
        let game = coloring_game(&g, 3);
        let mut views = Vec::new();
        let colorings = proper_colorings(&g, 3);
        assert_eq!(colorings.len(), 30);
        for c in &colorings {
            let p = symmetrize_zero_knowledge(&g, c).unwrap();
            p.check_invariants(&Rational::zero()).unwrap();
            assert!(p.is_winning(&game, &Rational::zero()));
            for x in 1..=5 {
                for a in 1..=3 {
                    assert_eq!(*p.get(a, a, x, x), r(1, 3));
                }
            }
            for (u, v) in g.edges() {
                for a in 1..=3 {
                    for b in 1..=3 {
                        let want = if a == b { r(0, 1) } else { r(1, 6) };
                        assert_eq!(*p.get(a, b, u + 1, v + 1), want);
                    }
                }
            }
            views.push(honest_verifier_view(&p, &game).unwrap());
        }
        assert!(views.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(views[0].blocks.len(), 5 + 10);
    }

    #[test]
    fn symmetrizer_is_permutation_invariant() {
        let g = cycle(5);
        let c = Coloring::new(vec![1, 2, 1, 2, 3], 3);
        let p = symmetrize_zero_knowledge(&g, &c).unwrap();
        for sigma in (1..=3).permutations(3) {
            assert_eq!(symmetrize_zero_knowledge(&g, &c.permuted(&sigma)).unwrap(), p);
        }
        // non-adjacent vertices 1 and 3 share a color
        assert_eq!(*p.get(2, 2, 1, 3), r(1, 3));
        assert!(symmetrize_zero_knowledge(&g, &Coloring::new(vec![1, 1, 2, 3, 2], 3)).is_err());
    }

    #[test]
    fn deterministic_views_differ() {
        let g = cycle(5);
        let game = coloring_game(&g, 3);
        let a = Coloring::new(vec![1, 2, 1, 2, 3], 3);
        let b = a.permuted(&[2, 1, 3]);
        let fa = DeterministicStrategy::new(a.colors().to_vec());
        let fb = DeterministicStrategy::new(b.colors().to_vec());
        let va = honest_verifier_view(&correlation_from_deterministic(&fa, &game).unwrap(), &game).unwrap();
        let vb = honest_verifier_view(&correlation_from_deterministic(&fb, &game).unwrap(), &game).unwrap();
        assert_ne!(va, vb);
    }

    #[test]
    fn view_of_game_without_off_diagonal_zeros() {
        let g = fixture_trivial(3, 2);
        let f = DeterministicStrategy::new(vec![1, 2, 1]);
        let p = correlation_from_deterministic(&f, &g).unwrap();
        let v = honest_verifier_view(&p, &g).unwrap();
        assert!(v.pairs().all(|(x, y)| x == y));
        assert_eq!(v.blocks.len(), 3);
    }

    #[test]
    fn complete_graph_view_is_everything() {
        let g = complete_graph(3);
        let game = coloring_game(&g, 3);
        let p = symmetrize_zero_knowledge(&g, &Coloring::new(vec![1, 2, 3], 3)).unwrap();
        assert_eq!(honest_verifier_view(&p, &game).unwrap().blocks.len(), 9);
    }

    #[test]
    fn tsv_layout() {
        let g = fixture_trivial(1, 2);
        let f = DeterministicStrategy::new(vec![2]);
        let p = correlation_from_deterministic(&f, &g).unwrap();
        assert_eq!(
            write_rational_tsv(&p),
            "1\t1\t1\t1\t0\t1\n1\t2\t1\t1\t0\t1\n2\t1\t1\t1\t0\t1\n2\t2\t1\t1\t1\t1\n"
        );
    }
}
