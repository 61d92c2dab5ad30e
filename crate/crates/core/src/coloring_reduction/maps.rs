use rayon::prelude::*;

use super::build::GadgetGraph;
use super::tables::{color_expressions, Affine};
use super::ReductionError;
use crate::game::{DeterministicStrategy, RuleTuple};
use crate::graph::{is_proper_coloring, BaseVertex, Coloring, VertexLabel};
use crate::numerics::{linalg, validate_pvm, CMatrix, OperatorColoring, PvmFamily};

pub const DEFAULT_OPERATOR_TOL: f64 = 1e-8;

fn expressions(label: &VertexLabel, k: usize) -> Result<[Affine; 3], ReductionError> {
    color_expressions(label, k)
        .ok_or_else(|| ReductionError::Internal(format!("{label} is not a gadget label")))
}

/// The 3-coloring a winning deterministic strategy induces on `G_λ`.
pub fn strategy_to_coloring(
    gg: &GadgetGraph,
    f: &DeterministicStrategy,
) -> Result<Coloring, ReductionError> {
    let g = &gg.game;
    if !f.fits(g) {
        return Err(ReductionError::StrategyShape);
    }
    if let Some(t) = f.first_loss(g) {
        return Err(ReductionError::NotWinning(t));
    }
    let k = g.k_answers();
    let mut colors = Vec::with_capacity(gg.graph.vertex_count());
    for members in &gg.members {
        let mut vertex_colors = None;
        for label in members {
            let values = expressions(label, k)?.map(|e| e.eval_indicator(|x| f.answer(x)));
            let color = match values {
                [1, 0, 0] => 1,
                [0, 1, 0] => 2,
                [0, 0, 1] => 3,
                _ => {
                    return Err(ReductionError::Internal(format!(
                        "{label} evaluates to {values:?}"
                    )))
                }
            };
            if *vertex_colors.get_or_insert(color) != color {
                return Err(ReductionError::Internal(format!(
                    "identified labels {} and {label} get different colors",
                    members[0]
                )));
            }
        }
        colors.push(vertex_colors.expect("every vertex has a label"));
    }
    let c = Coloring::new(colors, 3);
    if !is_proper_coloring(&gg.graph, &c) {
        return Err(ReductionError::Internal(
            "strategy image is not a proper coloring".into(),
        ));
    }
    Ok(c)
}

/// Reads a winning strategy off a proper 3-coloring of `G_λ`: after
/// renaming colors so that `A, B, C` get `1, 2, 3`, question `x` is
/// answered by the `a` whose special vertex has color 1.
pub fn coloring_to_strategy(
    gg: &GadgetGraph,
    c: &Coloring,
) -> Result<DeterministicStrategy, ReductionError> {
    if c.palette() != 3 || !is_proper_coloring(&gg.graph, c) {
        return Err(ReductionError::ImproperColoring);
    }
    let mut sigma = [0; 3];
    for b in BaseVertex::ALL {
        sigma[c.color(gg.base_vertex(b)) - 1] = b.canonical_color();
    }
    let c = c.permuted(&sigma);
    let (n, k) = (gg.game.n_questions(), gg.game.k_answers());
    let mut answers = Vec::with_capacity(n);
    for x in 1..=n {
        let ones: Vec<usize> = (1..=k)
            .filter(|&a| c.color(gg.special_vertex(a, x)) == 1)
            .collect();
        match ones[..] {
            [a] => answers.push(a),
            _ => {
                return Err(ReductionError::Internal(format!(
                    "question {x} has {} special vertices of color 1",
                    ones.len()
                )))
            }
        }
    }
    let f = DeterministicStrategy::new(answers);
    if let Some(t) = f.first_loss(&gg.game) {
        return Err(ReductionError::Internal(format!(
            "extracted strategy loses at {t}"
        )));
    }
    Ok(f)
}

#[derive(Debug, Clone)]
pub struct OperatorColoringReport {
    /// `colors[v][c-1]` is the projection for color `c` at vertex `v`.
    pub colors: OperatorColoring,
    /// Worst `max(‖P² − P‖, ‖P − P*‖)` over all vertices and colors.
    pub max_projector_residual: f64,
    /// Worst `‖P_1 + P_2 + P_3 − I‖`.
    pub max_completeness_residual: f64,
    /// Worst disagreement between labels identified into one vertex.
    pub max_merge_residual: f64,
    /// Worst `‖P_{c,u} P_{c,v}‖` over edges `uv`.
    pub max_orthogonality_residual: f64,
    pub worst_vertex: Option<usize>,
    pub worst_edge: Option<(usize, usize)>,
    pub tol: f64,
}

impl OperatorColoringReport {
    pub fn max_vertex_residual(&self) -> f64 {
        self.max_projector_residual
            .max(self.max_completeness_residual)
            .max(self.max_merge_residual)
    }

    pub fn passed(&self) -> bool {
        self.max_vertex_residual() <= self.tol && self.max_orthogonality_residual <= self.tol
    }
}

struct VertexEval {
    colors: [CMatrix; 3],
    projector: f64,
    completeness: f64,
    merge: f64,
}

/// Pushes a PVM strategy through the coloring tables. The family must be
/// valid at `tol` and must give every forbidden tuple a zero product.
pub fn operator_strategy_to_operator_coloring(
    gg: &GadgetGraph,
    fam: &PvmFamily,
    tol: f64,
) -> Result<OperatorColoringReport, ReductionError> {
    let g = &gg.game;
    if (fam.n_questions(), fam.k_answers()) != (g.n_questions(), g.k_answers()) {
        return Err(ReductionError::InvalidOperatorStrategy(format!(
            "family has n={}, k={}; game has n={}, k={}",
            fam.n_questions(),
            fam.k_answers(),
            g.n_questions(),
            g.k_answers()
        )));
    }
    let pvm = validate_pvm(&fam.clone().with_tol(tol));
    if !pvm.passed() {
        return Err(ReductionError::InvalidOperatorStrategy(format!(
            "PVM residual {:e} exceeds {tol:e}",
            pvm.max_residual()
        )));
    }
    let zeros: Vec<RuleTuple> = g.zero_tuples().collect();
    let losses: Vec<(RuleTuple, f64)> = zeros
        .par_iter()
        .map(|&t| {
            let p = fam.projector(t.a, t.x) * fam.projector(t.b, t.y);
            (t, linalg::op_norm(&p))
        })
        .collect();
    if let Some(&(t, r)) = losses.iter().find(|(_, r)| *r > tol) {
        return Err(ReductionError::InvalidOperatorStrategy(format!(
            "‖E E‖ = {r:e} on forbidden tuple {t}"
        )));
    }

    let k = g.k_answers();
    let id = linalg::identity(fam.dim());
    let evals: Vec<VertexEval> = gg
        .members
        .par_iter()
        .map(|members| -> Result<VertexEval, ReductionError> {
            let colors = expressions(&members[0], k)?.map(|e| e.eval_matrix(fam));
            let projector = colors
                .iter()
                .map(|p| linalg::projector_residual(p))
                .fold(0.0, f64::max);
            let completeness = linalg::op_norm(&(&colors[0] + &colors[1] + &colors[2] - &id));
            let mut merge = 0.0f64;
            for label in &members[1..] {
                let other = expressions(label, k)?.map(|e| e.eval_matrix(fam));
                for (p, q) in colors.iter().zip(&other) {
                    merge = merge.max(linalg::op_norm(&(p - q)));
                }
            }
            Ok(VertexEval {
                colors,
                projector,
                completeness,
                merge,
            })
        })
        .collect::<Result<_, _>>()?;

    let edges: Vec<(usize, usize)> = gg.graph.edges().collect();
    let edge_residuals: Vec<f64> = edges
        .par_iter()
        .map(|&(u, v)| {
            (0..3)
                .map(|c| linalg::op_norm(&(&evals[u].colors[c] * &evals[v].colors[c])))
                .fold(0.0, f64::max)
        })
        .collect();

    let mut report = OperatorColoringReport {
        colors: Vec::new(),
        max_projector_residual: 0.0,
        max_completeness_residual: 0.0,
        max_merge_residual: 0.0,
        max_orthogonality_residual: 0.0,
        worst_vertex: None,
        worst_edge: None,
        tol,
    };
    let mut worst = -1.0;
    for (v, e) in evals.iter().enumerate() {
        report.max_projector_residual = report.max_projector_residual.max(e.projector);
        report.max_completeness_residual = report.max_completeness_residual.max(e.completeness);
        report.max_merge_residual = report.max_merge_residual.max(e.merge);
        let r = e.projector.max(e.completeness).max(e.merge);
        if r > worst {
            worst = r;
            report.worst_vertex = Some(v);
        }
    }
    let mut worst = -1.0;
    for (&edge, &r) in edges.iter().zip(&edge_residuals) {
        if r > worst {
            worst = r;
            report.worst_edge = Some(edge);
        }
    }
    report.max_orthogonality_residual = edge_residuals.iter().copied().fold(0.0, f64::max);
    report.colors = evals.into_iter().map(|e| e.colors).collect();

    if report.max_vertex_residual() > tol {
        let v = report.worst_vertex.expect("graph is non-empty");
        return Err(ReductionError::Residual {
            residual: report.max_vertex_residual(),
            tol,
            location: format!("vertex {v} ({})", gg.graph.label(v)),
        });
    }
    if report.max_orthogonality_residual > tol {
        let (u, v) = report.worst_edge.expect("residual comes from an edge");
        return Err(ReductionError::Residual {
            residual: report.max_orthogonality_residual,
            tol,
            location: format!("edge {u} ({}) ~ {v} ({})", gg.graph.label(u), gg.graph.label(v)),
        });
    }
    Ok(report)
}
