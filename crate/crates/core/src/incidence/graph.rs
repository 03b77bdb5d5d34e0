use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on graph order.
pub const MAX_VERTICES: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Black => f.write_str("black"),
            Color::White => f.write_str("white"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub color: Option<Color>,
    pub label: String,
}

/// A vertex identified by color and label.
pub type VertexKey = (Option<Color>, String);

/// A finite simple graph whose vertices optionally carry a color and a label.
///
/// Vertex ids are positions in the vertex list. Edges are stored normalized
/// (`u < v`) in insertion order; adjacency lists are derived and kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    bipartite_by_construction: bool,
}

impl LabeledGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::build(vertices, edges, false)
    }

    /// Like [`LabeledGraph::new`] but additionally requires every vertex to be
    /// colored and every edge to join a black vertex to a white one.
    pub fn new_bipartite(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::build(vertices, edges, true)
    }

    fn build(vertices: Vec<Vertex>, edges: Vec<(usize, usize)>, bipartite: bool) -> Result<Self> {
        let n = vertices.len();
        if n > MAX_VERTICES {
            return Err(Error::CapExceeded { what: "graph order", limit: MAX_VERTICES, got: n });
        }
        let mut seen_labels: HashMap<(Option<Color>, &str), usize> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.color.is_some() {
                if let Some(j) = seen_labels.insert((v.color, v.label.as_str()), i) {
                    return Err(Error::InvalidGraph(format!(
                        "label {:?} used by vertices {} and {} of the same color",
                        v.label, j, i
                    )));
                }
            }
            if bipartite && v.color.is_none() {
                return Err(Error::InvalidGraph(format!("vertex {i} has no color")));
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("parallel edge ({a},{b})")));
            }
            if bipartite && vertices[a].color == vertices[b].color {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) joins vertices of one color")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            normalized.push(e);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(LabeledGraph { vertices, edges: normalized, adjacency, bipartite_by_construction: bipartite })
    }

    /// Cycle on `n` uncolored vertices labeled `0..n`.
    pub fn cycle(n: usize) -> Self {
        let vertices = (0..n).map(|i| Vertex { color: None, label: i.to_string() }).collect();
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(vertices, edges).expect("cycle of length >= 3")
    }

    /// Graph on uncolored vertices `0..n` with the given edges.
    pub fn plain(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| Vertex { color: None, label: i.to_string() }).collect();
        Self::new(vertices, edges.to_vec())
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn is_bipartite_by_construction(&self) -> bool {
        self.bipartite_by_construction
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.vertices[v].color
    }

    /// Finds the vertex with the given color and label.
    pub fn find(&self, color: Color, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.color == Some(color) && v.label == label)
    }

    /// Graph with one edge removed; used for perturbation checks.
    pub fn without_edge(&self, index: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(index);
        Self::build(self.vertices.clone(), edges, self.bipartite_by_construction)
            .expect("removing an edge preserves validity")
    }

    /// Edge set as pairs of (color, label), for label-exact comparisons.
    pub fn labeled_edge_set(&self) -> BTreeSet<(VertexKey, VertexKey)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let ka = (self.vertices[a].color, self.vertices[a].label.clone());
                let kb = (self.vertices[b].color, self.vertices[b].label.clone());
                if ka <= kb {
                    (ka, kb)
                } else {
                    (kb, ka)
                }
            })
            .collect()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}
