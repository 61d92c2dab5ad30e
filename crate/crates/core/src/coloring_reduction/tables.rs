//! The color assignments of the gadget pieces as affine expressions in the
//! answer projections `f_{a,x}`. Evaluating them at 0/1 indicators gives a
//! classical 3-coloring; evaluating them at matrices gives an operator one.

use crate::graph::VertexLabel;
use crate::numerics::{linalg, CMatrix, PvmFamily};

/// `constant + Σ coef · f_{a,x}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub(crate) struct Affine {
    constant: i64,
    terms: Vec<(usize, usize, i64)>,
}

impl Affine {
    fn constant(c: i64) -> Self {
        Affine {
            constant: c,
            terms: Vec::new(),
        }
    }

    fn f(a: usize, x: usize) -> Self {
        Affine {
            constant: 0,
            terms: vec![(a, x, 1)],
        }
    }

    /// `f_{[lo,hi],x}`, zero when `lo > hi`.
    fn range(lo: usize, hi: usize, x: usize) -> Self {
        Affine {
            constant: 0,
            terms: (lo..=hi).map(|a| (a, x, 1)).collect(),
        }
    }

    fn plus(mut self, other: &Affine) -> Self {
        self.constant += other.constant;
        self.terms.extend_from_slice(&other.terms);
        self
    }

    fn minus(mut self, other: &Affine) -> Self {
        self.constant -= other.constant;
        self.terms.extend(other.terms.iter().map(|&(a, x, c)| (a, x, -c)));
        self
    }

    pub(crate) fn eval_indicator(&self, answer: impl Fn(usize) -> usize) -> i64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|&(a, x, c)| if answer(x) == a { c } else { 0 })
                .sum::<i64>()
    }

    pub(crate) fn eval_matrix(&self, fam: &PvmFamily) -> CMatrix {
        let mut m = linalg::identity(fam.dim()).scale(self.constant as f64);
        for &(a, x, c) in &self.terms {
            m += fam.projector(a, x).scale(c as f64);
        }
        m
    }
}

fn one() -> Affine {
    Affine::constant(1)
}

fn zero() -> Affine {
    Affine::constant(0)
}

/// The three color expressions of one gadget label for a game with `k`
/// answers, or `None` for labels outside the gadget vocabulary.
pub(crate) fn color_expressions(label: &VertexLabel, k: usize) -> Option<[Affine; 3]> {
    Some(match *label {
        VertexLabel::Base(b) => {
            let mut out = [zero(), zero(), zero()];
            out[b.canonical_color() - 1] = one();
            out
        }
        VertexLabel::Rook { i, j, alpha, x } => {
            let low = Affine::range(1, alpha, x);
            let high = Affine::range(alpha + 1, k, x);
            let next = Affine::f(alpha + 1, x);
            let low_next = Affine::range(1, alpha + 1, x);
            let tail = Affine::range(alpha + 2, k, x);
            let h1 = [
                [low.clone(), zero(), high.clone()],
                [next.clone(), tail.clone(), low.clone()],
                [tail.clone(), low_next.clone(), zero()],
            ];
            let h2 = [
                [zero(), one(), zero()],
                [one().minus(&next), zero(), next.clone()],
                [next.clone(), zero(), one().minus(&next)],
            ];
            let h3 = [
                [high, zero(), low.clone()],
                [zero(), low_next, tail.clone()],
                [low, tail, next],
            ];
            let (r, c) = (i - 1, j - 1);
            [h1[r][c].clone(), h2[r][c].clone(), h3[r][c].clone()]
        }
        VertexLabel::Prism { t, alpha, x } => {
            let low = Affine::range(1, alpha, x);
            let high = Affine::range(alpha + 1, k, x);
            if t == 1 {
                [zero(), high, low]
            } else {
                [zero(), low, high]
            }
        }
        VertexLabel::QRook { i, j, a, b, x, y } => {
            let fa = Affine::f(a, x);
            let fb = Affine::f(b, y);
            let both = fa.clone().plus(&fb);
            let rest = one().minus(&both);
            let j1 = [
                [fa.clone(), zero(), one().minus(&fa)],
                [rest.clone(), fb.clone(), fa.clone()],
                [fb.clone(), one().minus(&fb), zero()],
            ];
            let j2 = [
                [zero(), one(), zero()],
                [both.clone(), zero(), rest.clone()],
                [rest.clone(), zero(), both],
            ];
            let j3 = [
                [one().minus(&fa), zero(), fa.clone()],
                [zero(), one().minus(&fb), fb],
                [fa, Affine::f(b, y), rest],
            ];
            let (r, c) = (i - 1, j - 1);
            let middle = |v: usize| v != 1 && v != k;
            if middle(a) && middle(b) {
                // Orthogonality rooks through C swap colors 2 and 3.
                [j1[r][c].clone(), j3[r][c].clone(), j2[r][c].clone()]
            } else {
                [j1[r][c].clone(), j2[r][c].clone(), j3[r][c].clone()]
            }
        }
        VertexLabel::Plain(_) => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::DeterministicStrategy;

    fn eval(label: VertexLabel, k: usize, f: &DeterministicStrategy) -> [i64; 3] {
        let e = color_expressions(&label, k).unwrap();
        [0, 1, 2].map(|c| e[c].eval_indicator(|x| f.answer(x)))
    }

    #[test]
    fn rook_tables_are_quantum_permutations_at_indicators() {
        for k in 3..=6 {
            for a in 1..=k {
                let f = DeterministicStrategy::new(vec![a]);
                for alpha in 1..=k - 2 {
                    let cell = |i, j| eval(VertexLabel::Rook { i, j, alpha, x: 1 }, k, &f);
                    for c in 0..3 {
                        for i in 1..=3 {
                            assert_eq!((1..=3).map(|j| cell(i, j)[c]).sum::<i64>(), 1);
                            assert_eq!((1..=3).map(|j| cell(j, i)[c]).sum::<i64>(), 1);
                        }
                    }
                    for i in 1..=3 {
                        for j in 1..=3 {
                            assert_eq!(cell(i, j).iter().sum::<i64>(), 1);
                        }
                    }
                    assert_eq!(cell(1, 2), [0, 1, 0]);
                    assert_eq!(cell(3, 3)[0], 0);
                    assert_eq!(cell(2, 1)[2], 0);
                    if alpha + 1 <= k - 2 {
                        let next = eval(VertexLabel::Rook { i: 1, j: 1, alpha: alpha + 1, x: 1 }, k, &f);
                        assert_eq!(cell(3, 2), next);
                    }
                }
            }
        }
    }

    #[test]
    fn q_tables_sum_to_one_when_answers_are_orthogonal() {
        let k = 4;
        for (a, b) in [(1, 1), (1, 4), (2, 3), (3, 3)] {
            // f(1)=fa-side answer never equals a while f(2)=b, or vice versa
            for (fx, fy) in [(a, b % k + 1), (a % k + 1, b), (a % k + 1, b % k + 1)] {
                let f = DeterministicStrategy::new(vec![fx, fy]);
                let cell = |i, j| eval(VertexLabel::QRook { i, j, a, b, x: 1, y: 2 }, k, &f);
                for c in 0..3 {
                    for i in 1..=3 {
                        assert_eq!((1..=3).map(|j| cell(i, j)[c]).sum::<i64>(), 1);
                        assert_eq!((1..=3).map(|j| cell(j, i)[c]).sum::<i64>(), 1);
                    }
                }
                assert_eq!(cell(3, 3)[0], 0);
            }
        }
    }
}
