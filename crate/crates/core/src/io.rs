//! Text formats: edge-list graphs and JSON hypergraph certificates.
//!
//! Graph format: first line `n m`, then `m` lines `u v` (0-based). Anything
//! after `#` on a line is a comment; blank lines are skipped.
//!
//! Certificate format: `{"n": <int>, "arcs": [[u, v, w], ...]}` with `u < v`
//! and arcs sorted by `(u, v, w)`. [`certificate_to_string`] emits a fixed
//! layout so that writing a parsed certificate reproduces the input bytes.

use serde::Deserialize;

use crate::error::{HydraError, Result};
use crate::graph::Graph;
use crate::hypergraph::DirectedHypergraph;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> HydraError {
    HydraError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(column, token)` pairs, 1-based columns, ignoring comments.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &body[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &body[s..]));
    }
    out
}

fn parse_usize(line: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, col, format!("expected a non-negative integer, found `{tok}`")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());

    let (hline, header) = rows.next().ok_or_else(|| parse_err(1, 1, "missing `n m` header"))?;
    if header.len() != 2 {
        return Err(parse_err(hline, header[0].0, "header must be `n m`"));
    }
    let n = parse_usize(hline, header[0])?;
    let m = parse_usize(hline, header[1])?;

    let mut edges = Vec::with_capacity(m);
    for (line, toks) in rows {
        if toks.len() != 2 {
            return Err(parse_err(line, toks[0].0, "edge lines must be `u v`"));
        }
        if edges.len() == m {
            return Err(parse_err(line, toks[0].0, format!("more than the declared {m} edges")));
        }
        let u = parse_usize(line, toks[0])?;
        let v = parse_usize(line, toks[1])?;
        for (x, col) in [(u, toks[0].0), (v, toks[1].0)] {
            if x >= n {
                return Err(parse_err(line, col, format!("vertex {x} out of range 0..{n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, toks[0].0, format!("self-loop at {u}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            1,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    n: usize,
    arcs: Vec<[usize; 3]>,
}

pub fn parse_certificate(text: &str) -> Result<DirectedHypergraph> {
    let doc: CertificateDoc = serde_json::from_str(text)
        .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    DirectedHypergraph::from_triples(doc.n, doc.arcs.into_iter().map(|[u, v, w]| (u, v, w)))
}

pub fn certificate_to_string(h: &DirectedHypergraph) -> String {
    let arcs: Vec<String> = h
        .arcs()
        .map(|a| {
            let (u, v) = a.body();
            format!("    [{u}, {v}, {}]", a.head())
        })
        .collect();
    if arcs.is_empty() {
        format!("{{\n  \"n\": {},\n  \"arcs\": []\n}}\n", h.n())
    } else {
        format!("{{\n  \"n\": {},\n  \"arcs\": [\n{}\n  ]\n}}\n", h.n(), arcs.join(",\n"))
    }
}

/// Certificate as a JSON value, for embedding in structured output.
pub fn certificate_json(h: &DirectedHypergraph) -> serde_json::Value {
    let arcs: Vec<[usize; 3]> = h
        .arcs()
        .map(|a| {
            let (u, v) = a.body();
            [u, v, a.head()]
        })
        .collect();
    serde_json::json!({ "n": h.n(), "arcs": arcs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn graph_with_comments() {
        let g = parse_graph("# a path\n4 3\n0 1 # first\n\n1 2\n2 3\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(graph_to_string(&g), "4 3\n0 1\n1 2\n2 3\n");
    }

    #[test]
    fn graph_errors_carry_positions() {
        let err = parse_graph("3 1\n0 x\n").unwrap_err();
        assert_eq!(
            err,
            HydraError::Parse {
                line: 2,
                column: 3,
                message: "expected a non-negative integer, found `x`".into()
            }
        );
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(HydraError::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 3\n"), Err(HydraError::Parse { line: 2, column: 3, .. })));
        assert!(matches!(parse_graph("3 1\n1 1\n"), Err(HydraError::Parse { .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n1 0\n"), Err(HydraError::DuplicateEdge(0, 1))));
    }

    #[test]
    fn certificate_normalizes_body_order() {
        let h = parse_certificate(r#"{"n": 4, "arcs": [[2, 1, 0], [0, 1, 3]]}"#).unwrap();
        assert_eq!(
            certificate_to_string(&h),
            "{\n  \"n\": 4,\n  \"arcs\": [\n    [0, 1, 3],\n    [1, 2, 0]\n  ]\n}\n"
        );
        assert!(parse_certificate(r#"{"n": 3, "arcs": [[0, 1, 1]]}"#).is_err());
        assert!(parse_certificate(r#"{"n": 3, "arcs": [[0, 1, 5]]}"#).is_err());
    }

    proptest! {
        #[test]
        fn certificate_text_round_trips(n in 3usize..9, raw in prop::collection::vec((0usize..9, 0usize..9, 0usize..9), 0..20)) {
            let triples = raw.into_iter()
                .map(|(u, v, w)| (u % n, v % n, w % n))
                .filter(|&(u, v, w)| u != v && w != u && w != v);
            let h = DirectedHypergraph::from_triples(n, triples).unwrap();
            let text = certificate_to_string(&h);
            let back = parse_certificate(&text).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(certificate_to_string(&back), text);
        }

        #[test]
        fn graph_text_round_trips(n in 1usize..9, raw in prop::collection::btree_set((0usize..9, 0usize..9), 0..20)) {
            let edges: std::collections::BTreeSet<_> = raw.into_iter()
                .map(|(u, v)| crate::graph::edge(u % n, v % n))
                .filter(|(u, v)| u != v)
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let text = graph_to_string(&g);
            prop_assert_eq!(parse_graph(&text).unwrap(), g);
        }
    }
}
