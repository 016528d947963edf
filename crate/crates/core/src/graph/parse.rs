use std::collections::HashMap;

use serde_json::Value;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Parses either the edge-list text format or the JSON graph format,
/// choosing by the first non-blank character (`{` means JSON).
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_graph_text(text)
    }
}

#[derive(Default)]
struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl LabelMap {
    fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        i
    }
}

/// Edge-list text: one `u v` pair per line, `#` starts a comment.
///
/// A line holding a single label declares an isolated node. Labels are
/// mapped to dense indices in order of first appearance.
pub fn parse_graph_text(text: &str) -> Result<Graph> {
    let mut map = LabelMap::default();
    let mut edges = Vec::new();
    let mut lines = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [single] => {
                map.intern(single);
            }
            [u, v] => {
                let (u, v) = (map.intern(u), map.intern(v));
                edges.push((u, v));
                lines.push(lineno + 1);
            }
            _ => {
                return Err(Error::Syntax {
                    line: lineno + 1,
                    message: format!("expected `u v`, found {} tokens", tokens.len()),
                })
            }
        }
    }
    Graph::with_labels(map.labels, &edges).map_err(|e| remap_line(e, &lines))
}

// Graph construction reports positions in its edge slice; translate to file lines.
fn remap_line(err: Error, lines: &[usize]) -> Error {
    match err {
        Error::SelfLoop { line, label } => Error::SelfLoop {
            line: lines[line - 1],
            label,
        },
        Error::DuplicateEdge { line, u, v } => Error::DuplicateEdge {
            line: lines[line - 1],
            u,
            v,
        },
        other => other,
    }
}

/// JSON graph: `{"nodes": [...], "edges": [[u, v], ...]}`.
///
/// Node labels may be strings or integers. `nodes` is optional; when
/// present it fixes the index order, and edges may only reference listed
/// nodes.
pub fn parse_graph_json(text: &str) -> Result<Graph> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Json("top level must be an object".into()))?;
    let mut map = LabelMap::default();
    let declared = match obj.get("nodes") {
        Some(Value::Array(nodes)) => {
            for n in nodes {
                map.intern(&json_label(n)?);
            }
            true
        }
        Some(_) => return Err(Error::Json("`nodes` must be an array".into())),
        None => false,
    };
    let raw_edges = match obj.get("edges") {
        Some(Value::Array(edges)) => edges,
        Some(_) => return Err(Error::Json("`edges` must be an array".into())),
        None => return Err(Error::Json("missing `edges`".into())),
    };
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (k, e) in raw_edges.iter().enumerate() {
        let pair = e
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| Error::Json(format!("edge {k} must be a pair [u, v]")))?;
        let mut ends = [0; 2];
        for (slot, v) in ends.iter_mut().zip(pair) {
            let label = json_label(v)?;
            *slot = if declared {
                *map.index
                    .get(&label)
                    .ok_or_else(|| Error::UnknownLabel(label.clone()))?
            } else {
                map.intern(&label)
            };
        }
        edges.push((ends[0], ends[1]));
    }
    Graph::with_labels(map.labels, &edges)
}

fn json_label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Json(format!(
            "node label must be a string or number, got {other}"
        ))),
    }
}
