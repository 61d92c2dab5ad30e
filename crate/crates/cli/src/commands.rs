use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use serde_json::{json, Map, Value};

use syncgame_core::coloring_reduction::{
    build_g_lambda, coloring_to_strategy, operator_strategy_to_operator_coloring,
    strategy_to_coloring, vertex_count_formula, vertex_count_upper_bound, GadgetGraph,
};
use syncgame_core::correlations::{
    honest_verifier_view, symmetrize_zero_knowledge, write_rational_tsv, Rational,
};
use syncgame_core::game::{
    coloring_game, fixture_magic_square, fixture_tiny_unsat, fixture_trivial, normalize_diagonal,
    pad_game, pad_strategy, parse_game, prepare_for_coloring, relabel_answers, search_labeling,
    unpad_strategy, write_game, DeterministicStrategy, LabelingBudget, SynchronousGame,
};
use syncgame_core::graph::{
    complete_graph, cycle, is_proper_coloring, parse_coloring, parse_dimacs, parse_labels,
    write_coloring, write_dimacs, write_labels, BaseVertex, Coloring, LabeledGraph, VertexLabel,
};
use syncgame_core::independence::{
    build_x_graph, independence_number, independent_set_to_strategy, strategy_to_independent_set,
};
use syncgame_core::numerics::{
    correlation_for_game, mermin_peres_fixture, parse_pvm, validate_pvm, write_pvm,
};
use syncgame_core::solvers::{
    find_coloring, find_coloring_with_precolor, find_deterministic_strategy, SearchBudget,
    SearchOutcome,
};

use crate::manifest::{write_manifest, FileDigest, RunManifest};
use crate::{Cli, Command, Fixture};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Status {
    Found = 0,
    ProvenNone = 20,
    Inconclusive = 30,
}

impl<T> From<&SearchOutcome<T>> for Status {
    fn from(o: &SearchOutcome<T>) -> Self {
        match o {
            SearchOutcome::Found(_) => Status::Found,
            SearchOutcome::ProvenNone => Status::ProvenNone,
            SearchOutcome::Inconclusive => Status::Inconclusive,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    BadInput(anyhow::Error),
    Internal(anyhow::Error),
}

trait OrFail<T> {
    fn bad_input(self) -> Result<T, Failure>;
    fn internal(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrFail<T> for Result<T, E> {
    fn bad_input(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::BadInput(e.into()))
    }

    fn internal(self) -> Result<T, Failure> {
        self.map_err(|e| Failure::Internal(e.into()))
    }
}

fn internal(msg: String) -> Failure {
    Failure::Internal(anyhow!(msg))
}

fn bad(msg: String) -> Failure {
    Failure::BadInput(anyhow!(msg))
}

/// Settings shared by all commands plus what the manifest records.
pub struct Session {
    seed: u64,
    budget_ms: u64,
    budget_nodes: u64,
    tol: f64,
    manifest_path: Option<PathBuf>,
    command: String,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    report: Map<String, Value>,
}

impl Session {
    pub fn new(cli: &Cli) -> Self {
        Session {
            seed: cli.seed,
            budget_ms: cli.budget_ms,
            budget_nodes: cli.budget_nodes,
            tol: cli.tol,
            manifest_path: cli.manifest.clone(),
            command: String::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            report: Map::new(),
        }
    }

    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_millis: self.budget_ms,
            seed: self.seed,
        }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path)
            .with_context(|| format!("reading {}", path.display()))
            .bad_input()?;
        self.inputs.push(FileDigest::of(path, &bytes));
        String::from_utf8(bytes)
            .with_context(|| format!("{} is not UTF-8", path.display()))
            .bad_input()
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<(), Failure> {
        fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .bad_input()?;
        self.outputs.push(FileDigest::of(path, text.as_bytes()));
        println!("wrote {}", path.display());
        Ok(())
    }

    fn default_manifest(&mut self, prefix: &Path) {
        if self.manifest_path.is_none() {
            self.manifest_path = Some(with_suffix(prefix, ".manifest.json"));
        }
    }

    fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.report.insert(key.to_string(), value.into());
    }

    /// Prints a report line and records it.
    fn say(&mut self, key: &str, value: impl Into<Value>) {
        let value = value.into();
        match &value {
            Value::String(s) => println!("{key}: {s}"),
            other => println!("{key}: {other}"),
        }
        self.report.insert(key.to_string(), value);
    }

    pub fn finish(self, exit_code: u8) -> anyhow::Result<()> {
        let Some(path) = self.manifest_path else {
            return Ok(());
        };
        let manifest = RunManifest {
            tool: "syncgame",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            seed: self.seed,
            budget_ms: self.budget_ms,
            budget_nodes: self.budget_nodes,
            tol: self.tol,
            inputs: self.inputs,
            outputs: self.outputs,
            exit_code,
            report: Value::Object(self.report),
        };
        write_manifest(&path, &manifest)
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(prefix.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

fn outcome_name<T>(o: &SearchOutcome<T>) -> &'static str {
    match o {
        SearchOutcome::Found(_) => "found",
        SearchOutcome::ProvenNone => "proven-none",
        SearchOutcome::Inconclusive => "inconclusive",
    }
}

/// `x a` lines, one per question.
fn write_strategy(f: &DeterministicStrategy) -> String {
    let mut out = String::new();
    for (x, a) in f.answers().iter().enumerate() {
        writeln!(out, "{} {a}", x + 1).unwrap();
    }
    out
}

pub fn run(s: &mut Session, command: &Command) -> Result<Status, Failure> {
    match command {
        Command::ReduceColoring {
            game,
            out,
            search_labeling,
        } => {
            s.command = "reduce-coloring".into();
            reduce_coloring(s, game, out, *search_labeling)
        }
        Command::ReduceIndependence { game, out } => {
            s.command = "reduce-independence".into();
            reduce_independence(s, game, out)
        }
        Command::Roundtrip { game } => {
            s.command = "roundtrip".into();
            roundtrip(s, game)
        }
        Command::Lovasz { graph, k, out, solve } => {
            s.command = "lovasz".into();
            lovasz(s, graph, *k, out, *solve)
        }
        Command::Zk { graph, k, out } => {
            s.command = "zk".into();
            zk(s, graph, *k, out.as_deref())
        }
        Command::VerifyOperator { fixture, pvm, game } => {
            s.command = "verify-operator".into();
            verify_operator(s, *fixture, pvm.as_deref(), game.as_deref())
        }
        Command::Color {
            graph,
            k,
            labels,
            out,
        } => {
            s.command = "color".into();
            color(s, graph, *k, labels.as_deref(), out.as_deref())
        }
        Command::Decode {
            game,
            coloring,
            out,
        } => {
            s.command = "decode".into();
            decode(s, game, coloring, out.as_deref())
        }
        Command::Fixture { name, out, n, k } => {
            s.command = "fixture".into();
            fixture(s, *name, out, *n, *k)
        }
    }
}

fn load_game(s: &mut Session, path: &Path) -> Result<SynchronousGame, Failure> {
    let text = s.read(path)?;
    parse_game(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .bad_input()
}

fn load_graph(s: &mut Session, path: &Path) -> Result<LabeledGraph, Failure> {
    let text = s.read(path)?;
    parse_dimacs(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .bad_input()
}

fn gadget(g: &SynchronousGame) -> Result<GadgetGraph, Failure> {
    let prepared = prepare_for_coloring(g).bad_input()?;
    build_g_lambda(&prepared).internal()
}

fn reduce_coloring(
    s: &mut Session,
    game: &Path,
    out: &Path,
    labeling: bool,
) -> Result<Status, Failure> {
    s.default_manifest(out);
    let g = load_game(s, game)?;
    let mut prepared = prepare_for_coloring(&g).bad_input()?;
    if labeling {
        let r = search_labeling(&prepared, &LabelingBudget { seed: s.seed, ..Default::default() }).internal()?;
        prepared = relabel_answers(&prepared, &r.perms).internal()?;
        let perms: Vec<Vec<usize>> = r.perms.iter().map(|p| p.as_slice().to_vec()).collect();
        s.note("answer_permutations", json!(perms));
        s.say("labeling_exhaustive", r.exhaustive);
    }
    let gg = build_g_lambda(&prepared).internal()?;
    let formula = vertex_count_formula(&prepared).internal()?;
    let bound = vertex_count_upper_bound(&prepared).internal()?;
    let c = &gg.classification;
    s.say("questions", g.n_questions());
    s.say("answers", g.k_answers());
    s.say("prepared_questions", prepared.n_questions());
    s.say("prepared_answers", prepared.k_answers());
    s.say("e_set", c.e_set.len());
    s.say("f_set", c.f_set.len());
    s.say("case1_set", c.case1_set.len());
    s.say("vertices", gg.graph.vertex_count());
    s.say("vertex_formula", formula);
    s.say("vertex_upper_bound", bound);
    s.say("edges", gg.graph.edge_count());
    if formula != gg.graph.vertex_count() {
        return Err(internal(format!(
            "built {} vertices, formula gives {formula}",
            gg.graph.vertex_count()
        )));
    }
    s.write(&with_suffix(out, ".dimacs"), &write_dimacs(&gg.graph))?;
    s.write(&with_suffix(out, ".labels"), &write_labels(&gg.graph))?;
    s.write(&with_suffix(out, ".game"), &write_game(&prepared))?;
    Ok(Status::Found)
}

/// The game in the shape the independence reduction needs: at least two
/// questions and an all-1 diagonal.
fn independence_ready(g: &SynchronousGame) -> Result<SynchronousGame, Failure> {
    normalize_diagonal(&pad_game(g, 2, 1).bad_input()?).bad_input()
}

fn reduce_independence(s: &mut Session, game: &Path, out: &Path) -> Result<Status, Failure> {
    s.default_manifest(out);
    let g = load_game(s, game)?;
    let ready = independence_ready(&g)?;
    let xg = build_x_graph(&ready).internal()?;
    s.say("questions", ready.n_questions());
    s.say("answers", ready.k_answers());
    s.say("vertices", xg.graph.vertex_count());
    s.say("edges", xg.graph.edge_count());
    s.write(&with_suffix(out, ".dimacs"), &write_dimacs(&xg.graph))?;
    Ok(Status::Found)
}

fn roundtrip(s: &mut Session, game: &Path) -> Result<Status, Failure> {
    let g = load_game(s, game)?;
    let n = g.n_questions();
    let budget = s.budget();
    let mut verdicts: Vec<(&str, Status)> = Vec::new();

    let direct = find_deterministic_strategy(&g, budget);
    s.say("strategy_search", outcome_name(&direct.outcome));
    if let Some(f) = direct.outcome.found() {
        if !f.wins(&g) {
            return Err(internal("strategy search returned a losing strategy".into()));
        }
        s.say("strategy", json!(f.answers()));
    }
    verdicts.push(("strategy search", (&direct.outcome).into()));

    let gg = gadget(&g)?;
    s.say("gadget_vertices", gg.graph.vertex_count());
    let col = find_coloring_with_precolor(&gg.graph, 3, &gg.base_precoloring(), budget);
    s.say("gadget_3_coloring", outcome_name(&col.outcome));
    if let Some(c) = col.outcome.found() {
        let f = unpad_strategy(&coloring_to_strategy(&gg, c).internal()?, n);
        if !f.wins(&g) {
            return Err(internal(format!("coloring decodes to losing strategy {:?}", f.answers())));
        }
        s.say("strategy_from_coloring", json!(f.answers()));
    }
    if let Some(f) = direct.outcome.found() {
        let padded = pad_strategy(f, gg.game.n_questions());
        let c = strategy_to_coloring(&gg, &padded).internal()?;
        if unpad_strategy(&coloring_to_strategy(&gg, &c).internal()?, n) != *f {
            return Err(internal("strategy -> coloring -> strategy is not the identity".into()));
        }
    }
    verdicts.push(("gadget 3-coloring", (&col.outcome).into()));

    let ready = independence_ready(&g)?;
    let xg = build_x_graph(&ready).internal()?;
    let alpha = independence_number(&xg.graph, budget);
    let target = ready.n_questions();
    s.say("x_vertices", xg.graph.vertex_count());
    s.say("independence_number", alpha.clique.len());
    s.say("independence_exact", alpha.exact);
    if alpha.clique.len() > target {
        return Err(internal(format!("α(X) = {} exceeds n = {target}", alpha.clique.len())));
    }
    let alpha_status = if alpha.clique.len() == target {
        let f = unpad_strategy(&independent_set_to_strategy(&ready, &xg, &alpha.clique).internal()?, n);
        if !f.wins(&g) {
            return Err(internal("independent set decodes to a losing strategy".into()));
        }
        s.say("strategy_from_independent_set", json!(f.answers()));
        Status::Found
    } else if alpha.exact {
        Status::ProvenNone
    } else {
        Status::Inconclusive
    };
    if let Some(f) = direct.outcome.found() {
        let padded = pad_strategy(f, target);
        let set = strategy_to_independent_set(&ready, &xg, &padded).internal()?;
        if unpad_strategy(&independent_set_to_strategy(&ready, &xg, &set).internal()?, n) != *f {
            return Err(internal("strategy -> independent set -> strategy is not the identity".into()));
        }
    }
    verdicts.push(("independence number", alpha_status));

    let decided: Vec<_> = verdicts.iter().filter(|(_, v)| *v != Status::Inconclusive).collect();
    if let Some((name, v)) = decided.iter().find(|(_, v)| *v != decided[0].1) {
        let (first, fv) = decided[0];
        return Err(internal(format!("{first} says {fv:?} but {name} says {v:?}")));
    }
    let status = if decided.len() < verdicts.len() {
        Status::Inconclusive
    } else {
        verdicts[0].1
    };
    s.say(
        "verdict",
        match status {
            Status::Found => "winnable (all agree)",
            Status::ProvenNone => "unwinnable (all agree)",
            Status::Inconclusive => "inconclusive",
        },
    );
    Ok(status)
}

fn lovasz(s: &mut Session, graph: &Path, k: usize, out: &Path, solve: bool) -> Result<Status, Failure> {
    s.default_manifest(out);
    if k <= 3 {
        return Err(bad(format!("k must exceed 3, got {k}")));
    }
    if k > 64 {
        return Err(bad(format!("k must be at most 64, got {k}")));
    }
    let g = load_graph(s, graph)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    let gg = gadget(&coloring_game(&g, k))?;
    // padding only kicks in for graphs with fewer than two vertices
    let closed = if n >= 2 { Some(3 + n + 9 * n * (k - 2) + 6 * m * k) } else { None };
    s.say("graph_vertices", n);
    s.say("graph_edges", m);
    s.say("gadget_vertices", gg.graph.vertex_count());
    s.say("gadget_edges", gg.graph.edge_count());
    if let Some(closed) = closed {
        s.say("closed_form", closed);
        if closed != gg.graph.vertex_count() {
            return Err(internal(format!(
                "gadget has {} vertices, closed form gives {closed}",
                gg.graph.vertex_count()
            )));
        }
    }
    s.write(&with_suffix(out, ".dimacs"), &write_dimacs(&gg.graph))?;
    s.write(&with_suffix(out, ".labels"), &write_labels(&gg.graph))?;
    if !solve {
        return Ok(Status::Found);
    }
    let r = find_coloring_with_precolor(&gg.graph, 3, &gg.base_precoloring(), s.budget());
    s.say("gadget_3_coloring", outcome_name(&r.outcome));
    if let Some(c) = r.outcome.found() {
        let f = unpad_strategy(&coloring_to_strategy(&gg, c).internal()?, n);
        let coloring = Coloring::new(f.answers().to_vec(), k);
        if !is_proper_coloring(&g, &coloring) {
            return Err(internal("gadget coloring decodes to an improper coloring".into()));
        }
        s.write(&with_suffix(out, ".coloring"), &write_coloring(&coloring))?;
    }
    Ok((&r.outcome).into())
}

fn zk(s: &mut Session, graph: &Path, k: usize, out: Option<&Path>) -> Result<Status, Failure> {
    if !(1..=64).contains(&k) {
        return Err(bad(format!("k must be in 1..=64, got {k}")));
    }
    let g = load_graph(s, graph)?;
    let r = find_coloring(&g, k, s.budget());
    s.say("coloring", outcome_name(&r.outcome));
    let Some(c) = r.outcome.found() else {
        return Ok((&r.outcome).into());
    };
    let p = symmetrize_zero_knowledge(&g, c).internal()?;
    let game = coloring_game(&g, k);
    let zero = Rational::from_integer(0);
    p.check_invariants(&zero).internal()?;
    if !p.is_winning(&game, &zero) {
        return Err(internal("symmetrized correlation loses the coloring game".into()));
    }
    let view = honest_verifier_view(&p, &game).internal()?;
    s.say("honest_view_pairs", view.blocks.len());
    let tsv = write_rational_tsv(&p);
    match out {
        Some(path) => s.write(path, &tsv)?,
        None => print!("{tsv}"),
    }
    Ok(Status::Found)
}

fn verify_operator(
    s: &mut Session,
    fixture: Option<Fixture>,
    pvm: Option<&Path>,
    game: Option<&Path>,
) -> Result<Status, Failure> {
    let (fam, g) = match (fixture, pvm, game) {
        (Some(Fixture::Mermin), _, _) => (mermin_peres_fixture(), fixture_magic_square()),
        (Some(other), _, _) => return Err(bad(format!("{other:?} is not an operator fixture"))),
        (None, Some(p), Some(gp)) => {
            let text = s.read(p)?;
            let fam = parse_pvm(&text).with_context(|| format!("parsing {}", p.display())).bad_input()?;
            (fam, load_game(s, gp)?)
        }
        _ => return Err(bad("give --fixture or both --pvm and --game".into())),
    };
    let tol = s.tol;
    let report = validate_pvm(&fam.clone().with_tol(tol));
    s.say("dimension", fam.dim());
    s.say("idempotency_residual", report.idempotency);
    s.say("self_adjointness_residual", report.self_adjointness);
    s.say("completeness_residual", report.completeness);
    if !report.passed() {
        return Err(bad(format!("PVM residual {:e} exceeds {tol:e}", report.max_residual())));
    }
    let p = correlation_for_game(&fam.clone().with_tol(tol), &g).bad_input()?;
    let loss = p.max_loss(&g);
    s.say("max_loss_probability", loss);
    if loss > tol {
        s.say("verdict", "not a winning strategy");
        return Ok(Status::ProvenNone);
    }
    let prepared = prepare_for_coloring(&g).bad_input()?;
    if (prepared.n_questions(), prepared.k_answers()) != (g.n_questions(), g.k_answers()) {
        return Err(bad("operator strategies need a game with n >= 2 and k >= 3".into()));
    }
    let gg = build_g_lambda(&prepared).internal()?;
    let colors = operator_strategy_to_operator_coloring(&gg, &fam, tol).internal()?;
    s.say("gadget_vertices", gg.graph.vertex_count());
    s.say("max_projector_residual", colors.max_projector_residual);
    s.say("max_completeness_residual", colors.max_completeness_residual);
    s.say("max_merge_residual", colors.max_merge_residual);
    s.say("max_orthogonality_residual", colors.max_orthogonality_residual);
    s.say("verdict", "winning; operator 3-coloring of the gadget verified");
    Ok(Status::Found)
}

fn color(
    s: &mut Session,
    graph: &Path,
    k: usize,
    labels: Option<&Path>,
    out: Option<&Path>,
) -> Result<Status, Failure> {
    if !(1..=64).contains(&k) {
        return Err(bad(format!("k must be in 1..=64, got {k}")));
    }
    let mut g = load_graph(s, graph)?;
    let mut precolor = Vec::new();
    if let Some(path) = labels {
        let text = s.read(path)?;
        let labels = parse_labels(&text).bad_input()?;
        if labels.len() != g.vertex_count() {
            return Err(bad(format!(
                "{} labels for {} vertices",
                labels.len(),
                g.vertex_count()
            )));
        }
        g = g.with_labels(labels);
        if k >= 3 {
            for b in BaseVertex::ALL {
                if let Some(v) = g.find_label(&VertexLabel::Base(b)) {
                    precolor.push((v, b.canonical_color()));
                }
            }
        }
    }
    let r = find_coloring_with_precolor(&g, k, &precolor, s.budget());
    s.say("vertices", g.vertex_count());
    s.say("outcome", outcome_name(&r.outcome));
    s.say("nodes", r.stats.nodes);
    if let Some(c) = r.outcome.found() {
        if !is_proper_coloring(&g, c) {
            return Err(internal("solver returned an improper coloring".into()));
        }
        let text = write_coloring(c);
        match out {
            Some(path) => s.write(path, &text)?,
            None => print!("{text}"),
        }
    }
    Ok((&r.outcome).into())
}

fn decode(s: &mut Session, game: &Path, coloring: &Path, out: Option<&Path>) -> Result<Status, Failure> {
    let g = load_game(s, game)?;
    let gg = gadget(&g)?;
    let text = s.read(coloring)?;
    let c = parse_coloring(&text, gg.graph.vertex_count(), 3).bad_input()?;
    if !is_proper_coloring(&gg.graph, &c) {
        return Err(bad("not a proper 3-coloring of the gadget graph".into()));
    }
    let f = unpad_strategy(&coloring_to_strategy(&gg, &c).internal()?, g.n_questions());
    if !f.wins(&g) {
        return Err(internal("decoded strategy loses".into()));
    }
    let text = write_strategy(&f);
    match out {
        Some(path) => s.write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(Status::Found)
}

fn fixture(s: &mut Session, name: Fixture, out: &Path, n: usize, k: usize) -> Result<Status, Failure> {
    let text = match name {
        Fixture::MagicSquare => write_game(&fixture_magic_square()),
        Fixture::TinyUnsat => write_game(&fixture_tiny_unsat()),
        Fixture::Trivial => {
            if n == 0 || k == 0 {
                return Err(bad("trivial game needs n, k >= 1".into()));
            }
            write_game(&fixture_trivial(n, k))
        }
        Fixture::Mermin => write_pvm(&mermin_peres_fixture()),
        Fixture::C5 => write_dimacs(&cycle(5)),
        Fixture::K4 => write_dimacs(&complete_graph(4)),
        Fixture::K5 => write_dimacs(&complete_graph(5)),
    };
    s.write(out, &text)?;
    Ok(Status::Found)
}
