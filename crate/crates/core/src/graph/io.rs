//! DIMACS edge format, vertex label files and coloring certificates.
//! Vertex numbers in every file are 1-based.

use std::fmt::Write as _;

use super::label::VertexLabel;
use super::labeled::LabeledGraph;
use super::predicates::Coloring;
use crate::format::{expect_arity, field, records, ParseError};

/// `p edge <n> <m>` followed by `e <u> <v>` with `u < v`, sorted.
pub fn write_dimacs(g: &LabeledGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Reads a DIMACS edge file; vertices get `Plain` labels.
pub fn parse_dimacs(text: &str) -> Result<LabeledGraph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (line, fields) in records(text) {
        match fields[0] {
            "p" => {
                expect_arity(line, &fields, 4)?;
                if header.is_some() {
                    return Err(ParseError::new(line, "duplicate `p` line"));
                }
                if fields[1] != "edge" && fields[1] != "col" {
                    return Err(ParseError::new(line, format!("unsupported format {:?}", fields[1])));
                }
                header = Some((
                    field(line, &fields, 2, "vertex count")?,
                    field(line, &fields, 3, "edge count")?,
                ));
            }
            "e" => {
                expect_arity(line, &fields, 3)?;
                let (n, _) = header.ok_or_else(|| ParseError::new(line, "edge before `p` line"))?;
                let u: usize = field(line, &fields, 1, "endpoint")?;
                let v: usize = field(line, &fields, 2, "endpoint")?;
                if !(1..=n).contains(&u) || !(1..=n).contains(&v) {
                    return Err(ParseError::new(line, format!("edge {u}-{v} out of range 1..={n}")));
                }
                if u == v {
                    return Err(ParseError::new(line, format!("self-loop at {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(ParseError::new(line, format!("unknown record `{other}`"))),
        }
    }
    let (n, _) = header.ok_or_else(|| ParseError::new(0, "missing `p edge` line"))?;
    Ok(LabeledGraph::plain(n, edges).expect("edges validated above"))
}

/// One `<index>\t<label>` line per vertex.
pub fn write_labels(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for (v, l) in g.labels().iter().enumerate() {
        writeln!(out, "{}\t{}", v + 1, l).unwrap();
    }
    out
}

pub fn parse_labels(text: &str) -> Result<Vec<VertexLabel>, ParseError> {
    let mut labels = Vec::new();
    for (line, fields) in records(text) {
        expect_arity(line, &fields, 2)?;
        let index: usize = field(line, &fields, 0, "vertex index")?;
        if index != labels.len() + 1 {
            return Err(ParseError::new(line, format!("expected vertex {}, found {index}", labels.len() + 1)));
        }
        labels.push(
            fields[1]
                .parse()
                .map_err(|e: super::label::LabelParseError| ParseError::new(line, e.to_string()))?,
        );
    }
    Ok(labels)
}

/// `<vertex> <color>` lines in vertex order.
pub fn write_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    for (v, col) in c.colors().iter().enumerate() {
        writeln!(out, "{} {}", v + 1, col).unwrap();
    }
    out
}

/// Reads a coloring certificate for a graph on `n` vertices. Every vertex
/// must appear exactly once.
pub fn parse_coloring(text: &str, n: usize, palette: usize) -> Result<Coloring, ParseError> {
    let mut colors = vec![0usize; n];
    for (line, fields) in records(text) {
        expect_arity(line, &fields, 2)?;
        let v: usize = field(line, &fields, 0, "vertex")?;
        let c: usize = field(line, &fields, 1, "color")?;
        if !(1..=n).contains(&v) {
            return Err(ParseError::new(line, format!("vertex {v} out of range 1..={n}")));
        }
        if colors[v - 1] != 0 {
            return Err(ParseError::new(line, format!("vertex {v} colored twice")));
        }
        if !(1..=palette).contains(&c) {
            return Err(ParseError::new(line, format!("color {c} out of range 1..={palette}")));
        }
        colors[v - 1] = c;
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(ParseError::new(0, format!("vertex {} has no color", v + 1)));
    }
    Ok(Coloring::new(colors, palette))
}
