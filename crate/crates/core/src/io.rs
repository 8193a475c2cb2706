//! Text and JSON formats.
//!
//! Edge lists have one edge per line, `u v w`, where `w` is an integer or a
//! fraction `p/q` and defaults to 1 when omitted. A line holding a single
//! name declares an isolated vertex. `#` starts a comment. Vertex names are
//! arbitrary whitespace-free tokens, numbered in order of first appearance.
//!
//! Matchings are read from a JSON object with `edge_ids` (preferred) or
//! `matching` (a list of endpoint pairs), from a bare JSON list of pairs, or
//! from text with one `u v` pair per line. A pair names the lowest-id edge
//! between its endpoints.

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{format_rational, parse_rational, EdgeId, Graph, Matching};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("{0}")]
    Json(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("no edge between {0:?} and {1:?}")]
    NoEdge(String, String),
    #[error("edge id {0} out of range")]
    EdgeId(u64),
    #[error("not a matching: {0}")]
    NotAMatching(String),
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut g = Graph::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| ParseError::Line { line, message };
        match tokens.as_slice() {
            [] => {}
            [v] => {
                g.ensure_vertex(v);
            }
            [u, v, rest @ ..] => {
                let weight = match rest {
                    [] => crate::graph::integer(1),
                    [w] => parse_rational(w).ok_or_else(|| err(format!("bad weight {w:?}")))?,
                    _ => return Err(err(format!("expected `u v [weight]`, found {} fields", tokens.len()))),
                };
                let (a, b) = (g.ensure_vertex(u), g.ensure_vertex(v));
                g.add_edge(a, b, weight).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    Ok(g)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        if g.incident(v).is_empty() {
            writeln!(out, "{}", g.name(v)).unwrap();
        }
    }
    for e in g.edges() {
        writeln!(out, "{} {} {}", g.name(e.u), g.name(e.v), format_rational(&e.weight)).unwrap();
    }
    out
}

fn edge_for_pair(g: &Graph, a: &str, b: &str) -> Result<EdgeId, ParseError> {
    let u = g.vertex_by_name(a).ok_or_else(|| ParseError::UnknownVertex(a.to_string()))?;
    let v = g.vertex_by_name(b).ok_or_else(|| ParseError::UnknownVertex(b.to_string()))?;
    g.edges_between(u, v).next().ok_or_else(|| ParseError::NoEdge(a.to_string(), b.to_string()))
}

fn pairs_from_json(g: &Graph, list: &[Value]) -> Result<Vec<EdgeId>, ParseError> {
    list.iter()
        .map(|p| {
            let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(|| ParseError::Json("pairs must be [u, v]".into()))?;
            let name = |v: &Value| match v {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(ParseError::Json("vertex names must be strings or numbers".into())),
            };
            edge_for_pair(g, &name(&pair[0])?, &name(&pair[1])?)
        })
        .collect()
}

pub fn parse_matching(g: &Graph, text: &str) -> Result<Matching, ParseError> {
    let edges: Vec<EdgeId> = match serde_json::from_str::<Value>(text) {
        Ok(Value::Object(obj)) => {
            if let Some(ids) = obj.get("edge_ids").and_then(Value::as_array) {
                ids.iter()
                    .map(|v| {
                        let id = v.as_u64().ok_or_else(|| ParseError::Json("edge ids must be integers".into()))?;
                        if (id as usize) < g.edge_count() {
                            Ok(EdgeId(id as usize))
                        } else {
                            Err(ParseError::EdgeId(id))
                        }
                    })
                    .collect::<Result<_, _>>()?
            } else if let Some(list) = obj.get("matching").and_then(Value::as_array) {
                pairs_from_json(g, list)?
            } else {
                return Err(ParseError::Json("expected \"edge_ids\" or \"matching\"".into()));
            }
        }
        Ok(Value::Array(list)) => pairs_from_json(g, &list)?,
        Ok(_) => return Err(ParseError::Json("expected an object or a list of pairs".into())),
        Err(_) => {
            let mut edges = Vec::new();
            for (idx, raw) in text.lines().enumerate() {
                let tokens: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
                match tokens.as_slice() {
                    [] => {}
                    [a, b] => edges.push(edge_for_pair(g, a, b)?),
                    _ => return Err(ParseError::Line { line: idx + 1, message: "expected `u v`".into() }),
                }
            }
            edges
        }
    };
    Matching::from_edges(g, edges).map_err(|e| ParseError::NotAMatching(e.to_string()))
}

/// `{"matching": [[u, v], ...], "edge_ids": [...], "weight": "p/q"}`.
pub fn matching_json(g: &Graph, m: &Matching) -> Value {
    json!({
        "matching": m.endpoint_pairs(g),
        "edge_ids": m.edges().map(|e| e.0).collect::<Vec<_>>(),
        "weight": format_rational(&m.weight(g)),
    })
}
