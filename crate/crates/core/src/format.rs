//! Line-oriented text format for capacitated graphs.
//!
//! ```text
//! # comment lines may appear anywhere
//! capgraph <n> <m>
//! k <vertex-id> <kappa>     (exactly one per vertex)
//! e <u> <v>                 (m lines, u < v)
//! ```
//!
//! All `k` lines precede all `e` lines. Blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{CapacitatedGraph, Edge};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<CapacitatedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut kappa: Vec<Option<u32>> = Vec::new();
    let mut edges: BTreeSet<Edge> = BTreeSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let tag = toks.next().unwrap_or_default();
        match (tag, header) {
            ("capgraph", None) => {
                let n = number(toks.next(), line, "vertex count")?;
                let m = number(toks.next(), line, "edge count")?;
                header = Some((n, m));
                kappa = vec![None; n];
            }
            ("capgraph", Some(_)) => return Err(parse_err(line, "repeated header")),
            (_, None) => return Err(parse_err(line, "expected `capgraph <n> <m>` header")),
            ("k", Some((n, _))) => {
                if !edges.is_empty() {
                    return Err(parse_err(line, "`k` line after the first `e` line"));
                }
                let v: usize = number(toks.next(), line, "vertex id")?;
                let k: u32 = number(toks.next(), line, "capacity")?;
                if v >= n {
                    return Err(parse_err(line, format!("vertex {v} out of range 0..{n}")));
                }
                if kappa[v].replace(k).is_some() {
                    return Err(parse_err(line, format!("duplicate capacity for vertex {v}")));
                }
            }
            ("e", Some((n, m))) => {
                if let Some(v) = kappa.iter().position(Option::is_none) {
                    return Err(parse_err(line, format!("vertex {v} has no `k` line")));
                }
                let u: usize = number(toks.next(), line, "endpoint")?;
                let v: usize = number(toks.next(), line, "endpoint")?;
                if u >= n || v >= n {
                    return Err(parse_err(line, format!("edge {u}-{v} out of range 0..{n}")));
                }
                if u >= v {
                    return Err(parse_err(line, format!("edge {u}-{v} must satisfy u < v")));
                }
                if edges.contains(&(u, v)) {
                    return Err(parse_err(line, format!("duplicate edge {u}-{v}")));
                }
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than {m} edges")));
                }
                edges.insert((u, v));
            }
            (other, _) => return Err(parse_err(line, format!("unknown record `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }

    let (_, m) = header.ok_or_else(|| parse_err(last_line, "missing header"))?;
    if let Some(v) = kappa.iter().position(Option::is_none) {
        return Err(parse_err(last_line, format!("vertex {v} has no `k` line")));
    }
    if edges.len() != m {
        return Err(parse_err(last_line, format!("expected {m} edges, found {}", edges.len())));
    }
    let kappa = kappa.into_iter().map(Option::unwrap_or_default).collect();
    CapacitatedGraph::new(kappa, edges)
}

/// Canonical rendering: capacities in id order, edges in lexicographic order.
pub fn write_graph(g: &CapacitatedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "capgraph {} {}", g.vertex_count(), g.edge_count());
    for v in g.vertices() {
        let _ = writeln!(out, "k {v} {}", g.kappa(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# star\ncapgraph 3 2\nk 0 2\n# mid\nk 1 1\nk 2 1\ne 0 1\ne 0 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.kappas(), &[2, 1, 1]);
        assert_eq!(g.neighbors(0), &[1, 2]);
    }

    #[test]
    fn write_then_parse_is_identity() {
        let g = CapacitatedGraph::complete(4, 2);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("k 0 1\n", 1, "header"),
            ("capgraph 2 0\nk 0 1\nk 0 1\n", 3, "duplicate capacity"),
            ("capgraph 2 0\nk 0 1\nk 5 1\n", 3, "out of range"),
            ("capgraph 2 1\nk 0 1\nk 1 1\ne 1 0\n", 4, "u < v"),
            ("capgraph 2 1\nk 0 1\ne 0 1\n", 3, "no `k` line"),
            ("capgraph 3 2\nk 0 1\nk 1 1\nk 2 1\ne 0 1\ne 0 1\n", 6, "duplicate edge"),
            ("capgraph 2 1\nk 0 1\nk 1 1\n", 3, "expected 1 edges"),
            ("capgraph 2 0\nk 0 1\nk 1 x\n", 3, "invalid capacity"),
            ("capgraph 1 0\nk 0 1 2\n", 2, "trailing"),
        ];
        for (text, want_line, needle) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line, message }) => {
                    assert_eq!(line, want_line, "{text:?}: {message}");
                    assert!(message.contains(needle), "{text:?}: {message}");
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }
}
