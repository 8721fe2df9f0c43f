//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m
//! u v      (m lines, 0-based ids)
//! ```
//!
//! Blank lines and `#` comments are ignored. [`write_graph`] emits edges in
//! lexicographic order, so `write(parse(write(g))) == write(g)`.

use std::fmt::Write as _;

use crate::graph::{Graph, GraphError};

/// Non-empty, comment-stripped lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse { line, msg: msg.into() }
}

fn two_numbers(line: usize, text: &str) -> Result<(usize, usize), GraphError> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
    };
    let a = next("first number")?;
    let b = next("second number")?;
    if let Some(extra) = it.next() {
        return Err(parse_err(line, format!("unexpected token `{extra}`")));
    }
    Ok((a, b))
}

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n m` header"))?;
    let (n, m) = two_numbers(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in lines {
        let (u, v) = two_numbers(line, text)?;
        for x in [u, v] {
            if x >= n {
                return Err(parse_err(line, format!("vertex {x} out of range 0..{n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
        edges.push((u, v));
        last_line = line;
        if edges.len() > m {
            return Err(parse_err(line, format!("more than the declared {m} edges")));
        }
    }
    if edges.len() != m {
        return Err(parse_err(last_line, format!("expected {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => parse_err(last_line, format!("duplicate edge {u} {v}")),
        other => other,
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.m() + 1));
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let g = parse_graph("# a path\n\n3 2\n0 1 # first\n2 1\n").unwrap();
        assert_eq!(g, named::path(3));
        assert_eq!(write_graph(&g), "3 2\n0 1\n1 2\n");
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(
            parse_graph("3 2\n0 1\n0 x\n"),
            Err(GraphError::Parse { line: 3, msg: "invalid second number `x`".into() })
        );
        assert!(matches!(parse_graph("2 1\n0 5\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 1\n"), Err(GraphError::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("3 1\n0 1\n1 2\n"), Err(GraphError::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n1 0\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(parse_graph(""), Err(GraphError::Parse { .. })));
    }

    proptest! {
        #[test]
        fn write_parse_round_trip(n in 1usize..12, raw in proptest::collection::vec((0usize..12, 0usize..12), 0..40)) {
            let mut edges: Vec<(usize, usize)> = raw
                .into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            let g = Graph::from_edges(n, edges).unwrap();
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back), text);
        }
    }
}
