//! Text formats for graphs and edge subsets.
//!
//! A graph file is one `u v` pair per line. `#` starts a comment, blank
//! lines are skipped, and an optional leading `n <count>` header fixes the
//! node count; without it the count is one more than the largest node id.
//! An edge-subset file is one edge index per line, same comment rules.

use crate::error::Error;
use crate::graph::{EdgeSet, FiniteGraph};
use std::path::Path;

fn as_parse_error(e: Error) -> Error {
    match e {
        Error::Usage(msg) => Error::Parse(msg),
        other => other,
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Parses the edge-list format described in the module docs.
pub fn parse_edge_list(text: &str) -> Result<FiniteGraph, Error> {
    let mut declared: Option<u32> = None;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut first = true;
    for (lineno, line) in meaningful_lines(text) {
        if first {
            first = false;
            if let Some(rest) = line.strip_prefix("n ").or_else(|| line.strip_prefix("n\t")) {
                declared = Some(rest.trim().parse().map_err(|_| {
                    Error::parse(format!("line {lineno}: bad node count {rest:?}"))
                })?);
                continue;
            }
        }
        let mut items = line.split_whitespace();
        let (a, b) = match (items.next(), items.next(), items.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::parse(format!(
                    "line {lineno}: expected `u v`, got {line:?}"
                )))
            }
        };
        let a: u32 = a
            .parse()
            .map_err(|_| Error::parse(format!("line {lineno}: bad node id {a:?}")))?;
        let b: u32 = b
            .parse()
            .map_err(|_| Error::parse(format!("line {lineno}: bad node id {b:?}")))?;
        edges.push((a, b));
    }
    let node_count = match declared {
        Some(n) => n,
        None => match edges.iter().map(|&(a, b)| a.max(b)).max() {
            Some(max) => max + 1,
            None => return Err(Error::parse("no edges and no `n <count>` header")),
        },
    };
    FiniteGraph::new(node_count, edges).map_err(as_parse_error)
}

/// Parses an edge-subset file against its graph.
pub fn parse_edge_indices(text: &str, g: &FiniteGraph) -> Result<EdgeSet, Error> {
    let mut indices = Vec::new();
    for (lineno, line) in meaningful_lines(text) {
        let e: u32 = line
            .parse()
            .map_err(|_| Error::parse(format!("line {lineno}: bad edge index {line:?}")))?;
        indices.push(e);
    }
    EdgeSet::from_indices(g, &indices).map_err(as_parse_error)
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<FiniteGraph, Error> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

pub fn load_edge_set(path: impl AsRef<Path>, g: &FiniteGraph) -> Result<EdgeSet, Error> {
    parse_edge_indices(&std::fs::read_to_string(path)?, g)
}
