//! The projection identities behind the 3-coloring gadgets, checked on
//! concrete matrices. Every check returns the worst hypothesis residual
//! and, separately, the worst violation of the conclusion.

use super::linalg::{self, CMatrix};
use super::qperm::{LatinCubeFamily, OperatorColoring, QuantumPermutation3};
use crate::graph::LabeledGraph;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PredicateReport {
    pub hypothesis: f64,
    pub conclusion: f64,
}

impl PredicateReport {
    pub fn holds(&self, hypothesis_tol: f64, conclusion_tol: f64) -> bool {
        self.hypothesis <= hypothesis_tol && self.conclusion <= conclusion_tol
    }

    fn merge(self, other: PredicateReport) -> PredicateReport {
        PredicateReport {
            hypothesis: self.hypothesis.max(other.hypothesis),
            conclusion: self.conclusion.max(other.conclusion),
        }
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn sum(ms: &[&CMatrix]) -> CMatrix {
    let mut s = linalg::zeros(ms[0].nrows());
    for m in ms {
        s += *m;
    }
    s
}

fn projectors_residual(ms: &[&CMatrix]) -> f64 {
    max_of(ms.iter().map(|m| linalg::projector_residual(m)))
}

/// Projectors that sum to the identity.
fn pvm_residual(ms: &[&CMatrix]) -> f64 {
    let d = ms[0].nrows();
    projectors_residual(ms).max(linalg::op_norm(&(sum(ms) - linalg::identity(d))))
}

fn max_commutator(xs: &[&CMatrix], ys: &[&CMatrix]) -> f64 {
    max_of(xs.iter().flat_map(|x| ys.iter().map(move |y| linalg::commutator_norm(x, y))))
}

/// Three projections summing to zero are all zero.
pub fn three_projections_sum_zero(p: &[CMatrix; 3]) -> PredicateReport {
    let ps: Vec<&CMatrix> = p.iter().collect();
    PredicateReport {
        hypothesis: projectors_residual(&ps).max(linalg::op_norm(&sum(&ps))),
        conclusion: max_of(p.iter().map(linalg::op_norm)),
    }
}

/// Three projections summing to the identity are pairwise orthogonal.
pub fn three_projections_sum_one(p: &[CMatrix; 3]) -> PredicateReport {
    let ps: Vec<&CMatrix> = p.iter().collect();
    let mut conclusion = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                conclusion = conclusion.max(linalg::op_norm(&(&p[i] * &p[j])));
            }
        }
    }
    PredicateReport {
        hypothesis: pvm_residual(&ps),
        conclusion,
    }
}

/// A 3×3 grid of projections with unit row sums and orthogonal columns
/// has unit column sums. `q` is row-major.
pub fn rows_to_quantum_permutation(q: &[CMatrix]) -> PredicateReport {
    let at = |i: usize, j: usize| &q[i * 3 + j];
    let mut hypothesis = 0.0f64;
    let mut conclusion = 0.0f64;
    for i in 0..3 {
        hypothesis = hypothesis.max(pvm_residual(&[at(i, 0), at(i, 1), at(i, 2)]));
    }
    for j in 0..3 {
        for i in 0..3 {
            for k in 0..3 {
                if i != k {
                    hypothesis = hypothesis.max(linalg::op_norm(&(at(i, j) * at(k, j))));
                }
            }
        }
        let col = sum(&[at(0, j), at(1, j), at(2, j)]);
        conclusion = conclusion.max(linalg::op_norm(&(col - linalg::identity(q[0].nrows()))));
    }
    PredicateReport { hypothesis, conclusion }
}

/// PVMs `e`, `f` with `[e_i, f_i] = 0` for each `i` commute entirely.
pub fn key_three_projection(e: &[CMatrix; 3], f: &[CMatrix; 3]) -> PredicateReport {
    let (es, fs): (Vec<&CMatrix>, Vec<&CMatrix>) = (e.iter().collect(), f.iter().collect());
    let diag = max_of((0..3).map(|i| linalg::commutator_norm(&e[i], &f[i])));
    PredicateReport {
        hypothesis: pvm_residual(&es).max(pvm_residual(&fs)).max(diag),
        conclusion: max_commutator(&es, &fs),
    }
}

/// PVMs `p`, `q` with `p_i q_i = 0` for each `i` commute entirely.
pub fn key_three_projection_orthogonal(p: &[CMatrix; 3], q: &[CMatrix; 3]) -> PredicateReport {
    let (ps, qs): (Vec<&CMatrix>, Vec<&CMatrix>) = (p.iter().collect(), q.iter().collect());
    let orth = max_of((0..3).map(|i| linalg::op_norm(&(&p[i] * &q[i]))));
    PredicateReport {
        hypothesis: pvm_residual(&ps).max(pvm_residual(&qs)).max(orth),
        conclusion: max_commutator(&ps, &qs),
    }
}

/// Row and column sums of a quantum permutation, and the commutation of
/// all 81 pairs of entries.
pub fn quantum_permutation_commutes(qp: &QuantumPermutation3) -> PredicateReport {
    let mut hypothesis = 0.0f64;
    for i in 1..=3 {
        hypothesis = hypothesis.max(pvm_residual(&[qp.entry(i, 1), qp.entry(i, 2), qp.entry(i, 3)]));
        hypothesis = hypothesis.max(pvm_residual(&[qp.entry(1, i), qp.entry(2, i), qp.entry(3, i)]));
    }
    let all: Vec<&CMatrix> = qp.entries().iter().collect();
    PredicateReport {
        hypothesis,
        conclusion: max_commutator(&all, &all),
    }
}

/// All 27 line sums of the cube, and commutation of all pairs of entries.
pub fn latin_cube_commutes(cube: &LatinCubeFamily) -> PredicateReport {
    let mut hypothesis = 0.0f64;
    for u in 1..=3 {
        for v in 1..=3 {
            let lines = [
                [cube.entry(1, u, v), cube.entry(2, u, v), cube.entry(3, u, v)],
                [cube.entry(u, 1, v), cube.entry(u, 2, v), cube.entry(u, 3, v)],
                [cube.entry(u, v, 1), cube.entry(u, v, 2), cube.entry(u, v, 3)],
            ];
            for line in lines {
                hypothesis = hypothesis.max(pvm_residual(&line));
            }
        }
    }
    let all: Vec<&CMatrix> = cube.entries().iter().collect();
    PredicateReport {
        hypothesis,
        conclusion: max_commutator(&all, &all),
    }
}

/// Hypothesis: every vertex carries a PVM and adjacent vertices have
/// orthogonal projectors of equal color. Conclusion: commutation between
/// the projectors of every pair of vertices, or only of non-adjacent pairs
/// when `all_pairs` is false.
pub fn operator_coloring_commutes(
    g: &LabeledGraph,
    colors: &OperatorColoring,
    all_pairs: bool,
) -> PredicateReport {
    assert_eq!(colors.len(), g.vertex_count());
    let mut hypothesis = 0.0f64;
    for c in colors {
        hypothesis = hypothesis.max(pvm_residual(&[&c[0], &c[1], &c[2]]));
    }
    for (u, v) in g.edges() {
        for c in 0..3 {
            hypothesis = hypothesis.max(linalg::op_norm(&(&colors[u][c] * &colors[v][c])));
        }
    }
    let mut conclusion = 0.0f64;
    for u in 0..colors.len() {
        for v in u + 1..colors.len() {
            if all_pairs || !g.adjacent(u, v) {
                let (a, b): (Vec<&CMatrix>, Vec<&CMatrix>) =
                    (colors[u].iter().collect(), colors[v].iter().collect());
                conclusion = conclusion.max(max_commutator(&a, &b));
            }
        }
    }
    PredicateReport { hypothesis, conclusion }
}

/// In a triangle's operator 3-coloring each color class sums to the
/// identity: `e_{1,c} + e_{2,c} + e_{3,c} = 1`.
pub fn triangle_coloring_sums(colors: &[[CMatrix; 3]; 3]) -> PredicateReport {
    let d = colors[0][0].nrows();
    let mut hypothesis = 0.0f64;
    for c in colors {
        hypothesis = hypothesis.max(pvm_residual(&[&c[0], &c[1], &c[2]]));
    }
    let mut conclusion = 0.0f64;
    for c in 0..3 {
        for i in 0..3 {
            for j in i + 1..3 {
                hypothesis = hypothesis.max(linalg::op_norm(&(&colors[i][c] * &colors[j][c])));
            }
        }
        let s = sum(&[&colors[0][c], &colors[1][c], &colors[2][c]]);
        conclusion = conclusion.max(linalg::op_norm(&(s - linalg::identity(d))));
    }
    PredicateReport { hypothesis, conclusion }
}

/// Runs every check that applies to one quantum permutation: the
/// permutation itself, its rows and columns as PVMs, the adjacent-column
/// orthogonal pairs, and the prism and rook colorings built from it.
pub fn quantum_permutation_suite(qp: &QuantumPermutation3) -> PredicateReport {
    use super::qperm::{prism_coloring_from_qperm, rook_coloring_from_qperm};
    use crate::graph::{rook_3x3, triangular_prism};
    let row = |i: usize| [qp.entry(i, 1).clone(), qp.entry(i, 2).clone(), qp.entry(i, 3).clone()];
    let col = |j: usize| [qp.entry(1, j).clone(), qp.entry(2, j).clone(), qp.entry(3, j).clone()];
    let mut r = quantum_permutation_commutes(qp);
    r = r.merge(rows_to_quantum_permutation(qp.entries()));
    for i in 1..=3 {
        r = r.merge(three_projections_sum_one(&row(i)));
        r = r.merge(three_projections_sum_one(&col(i)));
    }
    // Columns 1 and 2 have orthogonal entries in matching rows.
    r = r.merge(key_three_projection_orthogonal(&col(1), &col(2)));
    let rows = [row(1), row(2), row(3)];
    r = r.merge(triangle_coloring_sums(&rows));
    r = r.merge(operator_coloring_commutes(&triangular_prism(), &prism_coloring_from_qperm(qp), false));
    r.merge(operator_coloring_commutes(&rook_3x3(), &rook_coloring_from_qperm(qp), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{rook_3x3, triangular_prism};
    use crate::numerics::qperm::{
        latin_squares_3, prism_coloring_from_qperm, random_latin_cube_family,
        random_quantum_permutation_3, rook_coloring_from_qperm,
    };
    use num_complex::Complex64;

    fn qp() -> QuantumPermutation3 {
        random_quantum_permutation_3(&[([1, 2, 3], 3), ([2, 3, 1], 3), ([2, 1, 3], 3)], 11).unwrap()
    }

    #[test]
    fn nine_dimensional_permutation_commutes() {
        let r = quantum_permutation_commutes(&qp());
        assert!(r.hypothesis < 1e-12, "{r:?}");
        assert!(r.conclusion < 1e-10, "{r:?}");
    }

    #[test]
    fn full_suite_on_a_generated_permutation() {
        let r = quantum_permutation_suite(&qp());
        assert!(r.holds(1e-12, 1e-10), "{r:?}");
    }

    #[test]
    fn latin_cubes_commute() {
        let squares = latin_squares_3();
        let cube = random_latin_cube_family(&[(squares[0], 2), (squares[7], 1), (squares[11], 2)], 4).unwrap();
        let r = latin_cube_commutes(&cube);
        assert!(r.holds(1e-12, 1e-10), "{r:?}");
    }

    #[test]
    fn colorings_from_qperm_are_valid() {
        let q = qp();
        let prism = operator_coloring_commutes(&triangular_prism(), &prism_coloring_from_qperm(&q), false);
        assert!(prism.holds(1e-12, 1e-10), "{prism:?}");
        let rook = operator_coloring_commutes(&rook_3x3(), &rook_coloring_from_qperm(&q), true);
        assert!(rook.holds(1e-12, 1e-10), "{rook:?}");
    }

    #[test]
    fn hypothesis_violation_is_reported_separately() {
        // Two non-commuting rank-one projectors in dimension 2.
        let h = 0.5f64.sqrt();
        let p = CMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0].map(|v| Complex64::new(v, 0.0)));
        let q = CMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5].map(|v| Complex64::new(v, 0.0)));
        let id = linalg::identity(2);
        let e = [p.clone(), &id - &p, linalg::zeros(2)];
        let f = [q.clone(), &id - &q, linalg::zeros(2)];
        let r = key_three_projection(&e, &f);
        assert!(r.hypothesis > 0.1);
        assert!(r.conclusion > 0.1);
        assert!((r.conclusion - h).abs() < 0.3);
        let z = three_projections_sum_zero(&[p.clone(), linalg::zeros(2), linalg::zeros(2)]);
        assert!(z.hypothesis > 0.5);
        let ok = three_projections_sum_zero(&[linalg::zeros(2), linalg::zeros(2), linalg::zeros(2)]);
        assert_eq!(ok, PredicateReport::default());
    }
}
