//! Plain-text instance format.
//!
//! ```text
//! c optional comments
//! p sfvs <n> <m> <k>
//! e <u> <v>        (m lines, 1-indexed)
//! t <v>            (zero or more terminals)
//! ```
//!
//! Vertex identifiers in the file become the in-memory identifiers, so
//! solutions and traces refer to the numbers a user sees in the file.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Instance, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is detected at end of input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing problem line `p sfvs <n> <m> <k>`")]
    MissingHeader,
    #[error("duplicate problem line")]
    DuplicateHeader,
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(i64, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("duplicate terminal {0}")]
    DuplicateTerminal(Vertex),
    #[error("edge after terminal lines")]
    EdgeAfterTerminal,
    #[error("header announced {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    tok.and_then(|s| s.parse().ok())
        .ok_or_else(|| err(line, ParseErrorKind::Malformed(format!("expected {what}"))))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::new();
    let mut terminals = BTreeSet::new();
    let mut k = 0i64;
    let mut edges_seen = 0usize;
    let mut in_terminals = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let tag = toks.next().expect("non-empty line");

        if tag == "p" {
            if header.is_some() {
                return Err(err(line_no, ParseErrorKind::DuplicateHeader));
            }
            if toks.next() != Some("sfvs") {
                return Err(err(line_no, ParseErrorKind::Malformed("expected `p sfvs`".into())));
            }
            let n: usize = parse_num(toks.next(), line_no, "vertex count")?;
            let m: usize = parse_num(toks.next(), line_no, "edge count")?;
            k = parse_num(toks.next(), line_no, "budget")?;
            if toks.next().is_some() {
                return Err(err(line_no, ParseErrorKind::Malformed("trailing tokens".into())));
            }
            header = Some((n, m));
            graph = Graph::with_vertices(1..=n);
            continue;
        }

        let Some((n, _)) = header else {
            return Err(err(line_no, ParseErrorKind::MissingHeader));
        };
        let vertex = |tok: Option<&str>| -> Result<Vertex, ParseError> {
            let v: i64 = parse_num(tok, line_no, "vertex")?;
            if v < 1 || v as u64 > n as u64 {
                return Err(err(line_no, ParseErrorKind::OutOfRange(v, n)));
            }
            Ok(v as Vertex)
        };

        match tag {
            "e" => {
                if in_terminals {
                    return Err(err(line_no, ParseErrorKind::EdgeAfterTerminal));
                }
                let u = vertex(toks.next())?;
                let v = vertex(toks.next())?;
                if u == v {
                    return Err(err(line_no, ParseErrorKind::SelfLoop(u)));
                }
                if graph.has_edge(u, v) {
                    return Err(err(line_no, ParseErrorKind::DuplicateEdge(u.min(v), u.max(v))));
                }
                graph.add_edge(u, v).expect("checked above");
                edges_seen += 1;
            }
            "t" => {
                in_terminals = true;
                let v = vertex(toks.next())?;
                if !terminals.insert(v) {
                    return Err(err(line_no, ParseErrorKind::DuplicateTerminal(v)));
                }
            }
            other => {
                return Err(err(line_no, ParseErrorKind::Malformed(format!("unknown tag `{other}`"))));
            }
        }
        if toks.next().is_some() {
            return Err(err(line_no, ParseErrorKind::Malformed("trailing tokens".into())));
        }
    }

    let Some((_, m)) = header else {
        return Err(err(0, ParseErrorKind::MissingHeader));
    };
    if m != edges_seen {
        return Err(err(0, ParseErrorKind::EdgeCount { expected: m, found: edges_seen }));
    }
    Ok(Instance::new(graph, terminals, k).expect("terminals are range-checked"))
}

/// Maps the vertices of `inst` onto `1..=n` in increasing identifier order.
pub fn relabeling(inst: &Instance) -> BTreeMap<Vertex, Vertex> {
    inst.graph.vertices().zip(1..).collect()
}

/// Serializes `inst`, relabeling vertices to `1..=n` (see [`relabeling`]).
pub fn write_instance(inst: &Instance) -> String {
    write_instance_with_comments(inst, &[])
}

pub fn write_instance_with_comments(inst: &Instance, comments: &[String]) -> String {
    let map = relabeling(inst);
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(
        out,
        "p sfvs {} {} {}",
        inst.graph.vertex_count(),
        inst.graph.edge_count(),
        inst.k
    );
    for (u, v) in inst.graph.edges() {
        let _ = writeln!(out, "e {} {}", map[&u], map[&v]);
    }
    for t in &inst.terminals {
        let _ = writeln!(out, "t {}", map[t]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let inst = parse_instance("c tri\np sfvs 3 3 1\ne 1 2\ne 2 3\ne 1 3\nt 1\n").unwrap();
        assert_eq!(inst.graph.edge_count(), 3);
        assert_eq!(inst.terminals, BTreeSet::from([1]));
        assert_eq!(inst.k, 1);
    }

    #[test]
    fn rejects_bad_input_with_line_numbers() {
        let cases = [
            ("e 1 2\n", 1, ParseErrorKind::MissingHeader),
            ("p sfvs 2 1 0\ne 1 1\n", 2, ParseErrorKind::SelfLoop(1)),
            ("p sfvs 2 2 0\ne 1 2\ne 2 1\n", 3, ParseErrorKind::DuplicateEdge(1, 2)),
            ("p sfvs 2 1 0\ne 1 3\n", 2, ParseErrorKind::OutOfRange(3, 2)),
            ("p sfvs 2 1 0\ne 0 1\n", 2, ParseErrorKind::OutOfRange(0, 2)),
            ("p sfvs 2 0 0\nt 1\nt 1\n", 3, ParseErrorKind::DuplicateTerminal(1)),
            ("p sfvs 2 2 0\ne 1 2\n", 0, ParseErrorKind::EdgeCount { expected: 2, found: 1 }),
        ];
        for (text, line, kind) in cases {
            assert_eq!(parse_instance(text), Err(ParseError { line, kind }), "{text:?}");
        }
    }

    #[test]
    fn write_then_parse_is_identity_on_dense_ids() {
        let text = "p sfvs 4 4 2\ne 1 2\ne 1 3\ne 2 3\ne 3 4\nt 2\nt 4\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(write_instance(&inst), text);
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn writer_relabels_sparse_ids() {
        let g = Graph::from_edges([(10, 20), (20, 30)]).unwrap();
        let inst = Instance::new(g, BTreeSet::from([30]), 0).unwrap();
        assert_eq!(write_instance(&inst), "p sfvs 3 2 0\ne 1 2\ne 2 3\nt 3\n");
    }
}
