//! Instance and solution files in the PACE 2016 track-B conventions: one edge
//! per line as two whitespace-separated labels, `#` comments, repeated lines
//! raising multiplicity, `a a` setting a self-loop.

use crate::graph::{MultiGraph, Solution, VertexId};
use std::collections::HashMap;
use std::io::{self, BufRead, Write};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected two vertex tokens, found {found}")]
    BadTokenCount { line: usize, found: usize },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

pub fn parse_instance(reader: impl BufRead) -> Result<MultiGraph, ParseError> {
    let mut g = MultiGraph::new();
    let mut ids: HashMap<String, VertexId> = HashMap::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim_start().starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(ParseError::BadTokenCount {
                line: lineno + 1,
                found: tokens.len(),
            });
        }
        let mut id_of = |tok: &str| {
            *ids.entry(tok.to_string())
                .or_insert_with(|| g.add_vertex(tok.to_string()))
        };
        let u = id_of(tokens[0]);
        let v = id_of(tokens[1]);
        g.add_edge_unit(u, v);
    }
    Ok(g)
}

pub fn parse_instance_str(text: &str) -> Result<MultiGraph, ParseError> {
    parse_instance(text.as_bytes())
}

/// One label per line, lexicographic, newline-terminated.
pub fn write_solution(
    graph: &MultiGraph,
    sol: &Solution,
    mut out: impl Write,
) -> io::Result<()> {
    for label in sol.sorted_labels(graph) {
        writeln!(out, "{label}")?;
    }
    Ok(())
}

pub fn solution_to_string(graph: &MultiGraph, sol: &Solution) -> String {
    let mut buf = Vec::new();
    write_solution(graph, sol, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("labels are utf-8")
}

/// Edge list form of a live graph, suitable for re-parsing. Multiplicities
/// become repeated lines, loops become `a a`.
pub fn write_instance(graph: &MultiGraph, mut out: impl Write) -> io::Result<()> {
    for v in graph.vertices() {
        if graph.has_loop(v) {
            writeln!(out, "{} {}", graph.label(v), graph.label(v))?;
        }
        for (w, mult) in graph.neighbors(v) {
            if w > v {
                for _ in 0..mult {
                    writeln!(out, "{} {}", graph.label(v), graph.label(w))?;
                }
            }
        }
    }
    Ok(())
}

pub fn instance_to_string(graph: &MultiGraph) -> String {
    let mut buf = Vec::new();
    write_instance(graph, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("labels are utf-8")
}

/// Solution file: one label per line, `#` comments ignored.
pub fn parse_solution_labels(reader: impl BufRead) -> Result<Vec<String>, io::Error> {
    let mut labels = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        labels.push(t.to_string());
    }
    Ok(labels)
}
