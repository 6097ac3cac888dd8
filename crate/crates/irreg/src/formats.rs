//! Text formats.
//!
//! Graph files start with a header line `n m` followed by `m` lines `u v`.
//! Labelling files use the same layout with the edge label appended:
//! `u v (1,2)`. Marked-vertex files list vertex ids separated by whitespace
//! or commas. Everything after `#` on a line is a comment.

use std::fmt::Write as _;

use irreg_core::{AbelianGroup, GraphError, GroupError, Labelling, SimpleGraph};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("edge {u} {v} is not in the graph")]
    UnknownEdge { u: usize, v: usize },
    #[error("edge {u} {v} is labelled twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Core(#[from] irreg_core::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_number(line: usize, token: Option<&str>, what: &str) -> Result<usize, FormatError> {
    let token = token.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| syntax(line, format!("{what} `{token}` is not a non-negative integer")))
}

/// Header plus the remaining content lines.
fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<(usize, usize), FormatError> {
    let (line, text) = lines.next().ok_or_else(|| syntax(1, "missing `n m` header"))?;
    let mut tokens = text.split_whitespace();
    let n = parse_number(line, tokens.next(), "vertex count")?;
    let m = parse_number(line, tokens.next(), "edge count")?;
    if tokens.next().is_some() {
        return Err(syntax(line, "header has extra fields"));
    }
    Ok((n, m))
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph, FormatError> {
    let mut lines = content_lines(text);
    let (n, m) = header(&mut lines)?;
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let mut tokens = text.split_whitespace();
        let u = parse_number(line, tokens.next(), "endpoint")?;
        let v = parse_number(line, tokens.next(), "endpoint")?;
        if tokens.next().is_some() {
            return Err(syntax(line, "edge line has extra fields"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    let g = SimpleGraph::new(n, &edges)?;
    if g.edge_count() != m {
        return Err(syntax(1, "edge list contains repeated edges"));
    }
    Ok(g)
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn next_token(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    let end = s.find(char::is_whitespace).unwrap_or(s.len());
    s.split_at(end)
}

/// Reads labels for the edges of `g`; lines may list edges in any order.
pub fn parse_labelling(
    text: &str,
    g: &SimpleGraph,
    grp: &AbelianGroup,
) -> Result<Labelling, FormatError> {
    let mut lines = content_lines(text);
    let (n, m) = header(&mut lines)?;
    if n != g.vertex_count() || m != g.edge_count() {
        return Err(syntax(
            1,
            format!(
                "header `{n} {m}` does not match the graph ({} {})",
                g.vertex_count(),
                g.edge_count()
            ),
        ));
    }
    let mut labels = vec![None; m];
    let mut found = 0;
    for (line, text) in lines {
        let (u, rest) = next_token(text);
        let (v, rest) = next_token(rest);
        let u = parse_number(line, Some(u).filter(|t| !t.is_empty()), "endpoint")?;
        let v = parse_number(line, Some(v).filter(|t| !t.is_empty()), "endpoint")?;
        let element = rest.trim();
        if element.is_empty() {
            return Err(syntax(line, "missing edge label"));
        }
        let x = grp
            .parse_element(element)
            .map_err(|e| syntax(line, e.to_string()))?;
        let e = g.edge_id(u, v).ok_or(FormatError::UnknownEdge { u, v })?;
        if labels[e].replace(x).is_some() {
            return Err(FormatError::DuplicateEdge { u, v });
        }
        found += 1;
    }
    if found != m {
        return Err(FormatError::EdgeCount { expected: m, found });
    }
    let labels = labels.into_iter().map(|x| x.expect("every edge seen")).collect();
    Ok(Labelling::from_labels(g, grp, labels)?)
}

/// Labelling file contents; `sep` separates the columns.
pub fn write_labelling(g: &SimpleGraph, lab: &Labelling, sep: &str) -> String {
    let mut out = format!("{}{sep}{}\n", g.vertex_count(), g.edge_count());
    for (&(u, v), x) in g.edges().iter().zip(lab.labels()) {
        let _ = writeln!(out, "{u}{sep}{v}{sep}{x}");
    }
    out
}

pub fn parse_marked(text: &str) -> Result<Vec<usize>, FormatError> {
    let mut marked = Vec::new();
    for (line, text) in content_lines(text) {
        for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
            if !token.is_empty() {
                marked.push(parse_number(line, Some(token), "vertex")?);
            }
        }
    }
    Ok(marked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "# a path\n4 3\n0 1\n1 2 # middle\n\n2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn graph_errors() {
        assert!(matches!(parse_graph(""), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_graph("3 2\n0 1\n"),
            Err(FormatError::EdgeCount { expected: 2, found: 1 })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 x\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 3\n"),
            Err(FormatError::Graph(GraphError::VertexOutOfRange { .. }))
        ));
        assert!(parse_graph("3 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn labelling_round_trip() {
        let g = parse_graph("3 2\n0 1\n1 2\n").unwrap();
        let grp: AbelianGroup = "Z2xZ3".parse().unwrap();
        let lab = parse_labelling("3 2\n1 2 (1, 2)\n0 1 (0,1)\n", &g, &grp).unwrap();
        assert_eq!(lab.label(0).residues(), &[0, 1]);
        assert_eq!(lab.label(1).residues(), &[1, 2]);
        for sep in [" ", "\t"] {
            let text = write_labelling(&g, &lab, sep);
            assert_eq!(parse_labelling(&text, &g, &grp).unwrap(), lab);
        }
        assert!(matches!(
            parse_labelling("3 2\n0 2 (0,1)\n0 1 (0,1)\n", &g, &grp),
            Err(FormatError::UnknownEdge { u: 0, v: 2 })
        ));
        assert!(matches!(
            parse_labelling("3 2\n0 1 (0,1)\n", &g, &grp),
            Err(FormatError::EdgeCount { .. })
        ));
    }

    #[test]
    fn marked_lists() {
        assert_eq!(parse_marked("1,2 3\n# x\n4").unwrap(), vec![1, 2, 3, 4]);
        assert!(parse_marked("1,-2").is_err());
    }
}
