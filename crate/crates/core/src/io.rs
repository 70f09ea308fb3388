//! Edge-list graph files.
//!
//! ```text
//! # comment
//! n m
//! u v        (m lines, labels 1..=n)
//! ```
//!
//! Blank lines and `#` comments (whole-line or trailing) are ignored.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Reads an edge-list graph. Vertex `label` becomes id `label - 1`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line, message };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected two integers, found {content:?}")));
        }
        let a: usize = fields[0]
            .parse()
            .map_err(|_| err(format!("{:?} is not a non-negative integer", fields[0])))?;
        let b: usize = fields[1]
            .parse()
            .map_err(|_| err(format!("{:?} is not a non-negative integer", fields[1])))?;

        let Some((n, m)) = header else {
            header = Some((a, b));
            continue;
        };
        if edges.len() == m {
            return Err(err(format!("more than the declared {m} edges")));
        }
        for label in [a, b] {
            if label == 0 || label > n {
                return Err(err(format!("vertex {label} outside 1..={n}")));
            }
        }
        if a == b {
            return Err(err(format!("self-loop at vertex {a}")));
        }
        let key = (a.min(b), a.max(b));
        if let Some(first) = seen.insert(key, line) {
            return Err(err(format!(
                "duplicate edge {a} {b} (first given on line {first})"
            )));
        }
        edges.push((a - 1, b - 1));
    }

    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: last_line.max(1),
            message: "missing `n m` header".into(),
        });
    };
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            message: format!("header declares {m} edges but {} were given", edges.len()),
        });
    }
    Graph::new(n, edges)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Serializes in the same format, labels 1-based.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.num_vertices(), g.num_edges());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn parses_path_and_clique() {
        assert_eq!(parse_graph("3 2\n1 2\n2 3").unwrap(), generate::path(3));
        assert_eq!(
            parse_graph("4 6\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4").unwrap(),
            generate::complete(4)
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_graph("# a path\n\n3 2 # header\n1 2\n\n# middle\n2 3\n").unwrap();
        assert_eq!(g, generate::path(3));
    }

    #[test]
    fn self_loop_names_the_line() {
        let err = parse_graph("2 1\n1 1").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "self-loop at vertex 1".into()
            }
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("3 2\n1 2\n2 1", 3),
            ("3 1\n1 4", 2),
            ("3 1\n1 x", 2),
            ("3 1\n1 2 3", 2),
            ("x 1\n", 1),
            ("3 1\n1 2\n2 3", 3),
            ("3 2\n1 2\n", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn write_then_parse() {
        let g = generate::erdos_renyi(10, 0.4, 5);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
