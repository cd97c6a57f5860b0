//! Graph input formats.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with `0 <= u < v < n`.
//! Lines whose first non-blank character is `#` are comments, blank lines are
//! ignored.
//!
//! Adjacency JSON: `{"n": 3, "edges": [[0, 1], [1, 2]], "names": ["a", "b", "c"]}`
//! with `names` optional.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    AdjacencyJson,
}

impl GraphFormat {
    /// JSON if the first non-blank character opens an object, edge list otherwise.
    pub fn detect(text: &str) -> GraphFormat {
        if text.trim_start().starts_with('{') {
            GraphFormat::AdjacencyJson
        } else {
            GraphFormat::EdgeList
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::AdjacencyJson => parse_adjacency_json(text),
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = fields
            .next()
            .ok_or_else(|| Error::parse(lineno, format!("missing {what}")))?;
        tok.parse()
            .map_err(|_| Error::parse(lineno, format!("expected integer {what}, found `{tok}`")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = fields.next() {
        return Err(Error::parse(lineno, format!("unexpected trailing `{extra}`")));
    }
    Ok((a, b))
}

fn add_checked(g: &mut Graph, u: usize, v: usize, lineno: usize) -> Result<()> {
    let n = g.n();
    if u >= n || v >= n {
        return Err(Error::parse(
            lineno,
            format!("vertex index out of range in edge {u} {v} (n = {n})"),
        ));
    }
    if u == v {
        return Err(Error::parse(lineno, format!("loop at vertex {u}")));
    }
    if g.has_edge(u, v) {
        return Err(Error::parse(lineno, format!("duplicate edge {u} {v}")));
    }
    g.add_edge(u, v)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(Graph, usize)> = None;
    let mut seen = 0;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match header.as_mut() {
            None => {
                let (n, m) = parse_pair(line, lineno)?;
                let g = Graph::new(n).map_err(|e| Error::parse(lineno, e.to_string()))?;
                header = Some((g, m));
            }
            Some((g, m)) => {
                if seen == *m {
                    return Err(Error::parse(lineno, format!("more than the {m} declared edges")));
                }
                let (u, v) = parse_pair(line, lineno)?;
                add_checked(g, u, v, lineno)?;
                seen += 1;
            }
        }
    }
    let (g, m) = header.ok_or_else(|| Error::parse(last_line.max(1), "missing `n m` header"))?;
    if seen != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("expected {m} edges, found {seen}"),
        ));
    }
    Ok(g)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdjacencyJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl From<&Graph> for AdjacencyJson {
    fn from(g: &Graph) -> Self {
        AdjacencyJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            names: g.names().map(|n| n.to_vec()),
        }
    }
}

/// Line number (1-based) of the `index`-th `[` that opens an edge pair. Used
/// only to point error messages at the offending edge.
fn edge_line(text: &str, index: usize) -> usize {
    let Some(start) = text.find("\"edges\"") else {
        return 1;
    };
    let mut depth = 0usize;
    let mut count = 0usize;
    for (off, ch) in text[start..].char_indices() {
        match ch {
            '[' => {
                depth += 1;
                if depth == 2 {
                    if count == index {
                        return text[..start + off].matches('\n').count() + 1;
                    }
                    count += 1;
                }
            }
            ']' => {
                if depth <= 1 {
                    break;
                }
                depth -= 1;
            }
            _ => {}
        }
    }
    1
}

pub fn parse_adjacency_json(text: &str) -> Result<Graph> {
    let doc: AdjacencyJson = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
    let mut g = Graph::new(doc.n).map_err(|e| Error::parse(1, e.to_string()))?;
    for (i, [u, v]) in doc.edges.iter().copied().enumerate() {
        add_checked(&mut g, u, v, edge_line(text, i))?;
    }
    match doc.names {
        Some(names) => g.with_names(names).map_err(|e| Error::parse(1, e.to_string())),
        None => Ok(g),
    }
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
