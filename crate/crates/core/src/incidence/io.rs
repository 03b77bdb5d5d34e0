use std::collections::HashMap;
use std::fmt::Write as _;

use super::graph::{Color, LabeledGraph, Vertex};
use crate::error::{Error, Result};

/// DOT rendering: black vertices as boxes, white as circles.
pub fn to_dot(g: &LabeledGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{}\" {{", escape(name)).unwrap();
    for (i, v) in g.vertices().iter().enumerate() {
        let shape = match v.color {
            Some(Color::Black) => "box",
            Some(Color::White) => "circle",
            None => "ellipse",
        };
        writeln!(out, "  v{i} [label=\"{}\", shape={shape}];", escape(&v.label)).unwrap();
    }
    for &(a, b) in g.edges() {
        writeln!(out, "  v{a} -- v{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Line-oriented text: `v <id> <color> <label>` lines, then `e <id> <id>`.
/// Uncolored vertices use `-` as their color.
pub fn to_text(g: &LabeledGraph) -> String {
    let mut out = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        let color = v.color.map_or("-".to_string(), |c| c.to_string());
        writeln!(out, "v {i} {color} {}", v.label).unwrap();
    }
    for &(a, b) in g.edges() {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

/// Parses the line format written by [`to_text`]. Vertex ids may be any
/// distinct non-negative integers; they are renumbered in order of
/// appearance. Blank lines and `#` comments are ignored.
pub fn from_text(text: &str) -> Result<LabeledGraph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Parse { line: lineno + 1, message: msg.to_string() };
        let mut parts = line.splitn(4, char::is_whitespace);
        match parts.next() {
            Some("v") => {
                let id: u64 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad vertex id"))?;
                let color = match parts.next() {
                    Some("black") => Some(Color::Black),
                    Some("white") => Some(Color::White),
                    Some("-") => None,
                    _ => return Err(bad("color must be black, white or -")),
                };
                let label = parts.next().map(str::trim).unwrap_or("").to_string();
                if !edges.is_empty() {
                    return Err(bad("vertex lines must precede edge lines"));
                }
                if ids.insert(id, vertices.len()).is_some() {
                    return Err(bad("duplicate vertex id"));
                }
                vertices.push(Vertex { color, label });
            }
            Some("e") => {
                let mut endpoint = || -> Result<usize> {
                    let id: u64 = parts.next().and_then(|s| s.trim().parse().ok()).ok_or_else(|| bad("bad edge endpoint"))?;
                    ids.get(&id).copied().ok_or_else(|| bad("edge refers to unknown vertex"))
                };
                let a = endpoint()?;
                let b = endpoint()?;
                edges.push((a, b));
            }
            _ => return Err(bad("expected `v` or `e`")),
        }
    }
    let colored = !vertices.is_empty() && vertices.iter().all(|v| v.color.is_some());
    let bipartite = colored && edges.iter().all(|&(a, b)| vertices[a].color != vertices[b].color);
    if bipartite {
        LabeledGraph::new_bipartite(vertices, edges)
    } else {
        LabeledGraph::new(vertices, edges)
    }
}
