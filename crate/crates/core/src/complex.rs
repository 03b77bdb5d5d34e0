//! The 2-complex of a polygonal presentation: one k-gon per rotation orbit,
//! sides with equal letters glued respecting orientation.
//!
//! Vertex links are read off face corners. A corner whose incoming side is
//! `x_a` and outgoing side is `x_b` sits at the terminal end of edge `a` and
//! the initial end of edge `b`, and contributes the link edge
//! `{y_a, x_b}`. Nothing here consults the presentation's leading-pair
//! bookkeeping, so comparing these links with
//! [`reconstruct_link_graph`](crate::presentation::reconstruct_link_graph)
//! is an independent check.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::{self, Color, Extent, LabeledGraph, Vertex};
use crate::presentation::{validate_presentation, CyclicTuple, Letter, PolygonalPresentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedEdge {
    pub letter: Letter,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Boundary word, read in the face's orientation.
    pub word: CyclicTuple,
    /// Indices into [`Polyhedron::edges`], one per side.
    pub sides: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corner {
    pub face: usize,
    pub position: usize,
    pub incoming: Letter,
    pub outgoing: Letter,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polyhedron {
    pub k: usize,
    pub vertex_count: usize,
    pub edges: Vec<OrientedEdge>,
    pub faces: Vec<Face>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Glues one k-gon per rotation orbit of `p`.
///
/// Refuses presentations whose leading pairs are ambiguous (condition (3)),
/// since their corners would produce parallel link edges.
pub fn build_polyhedron(p: &PolygonalPresentation) -> Result<Polyhedron> {
    let report = validate_presentation(p);
    if !report.condition3.passed {
        return Err(Error::InvalidPresentation(format!(
            "cannot build polyhedron: {}",
            report.condition3.witnesses.join("; ")
        )));
    }
    let orbits = p.orbits();
    for f in &orbits {
        if f.arity() != p.k {
            return Err(Error::MixedArity(p.k, f.arity()));
        }
    }

    // one edge per letter that occurs
    let mut letters: Vec<Letter> = orbits.iter().flat_map(|f| f.0.iter().copied()).collect();
    letters.sort();
    letters.dedup();
    let edge_index: BTreeMap<Letter, usize> = letters.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    // end 2i is the initial end of edge i, 2i+1 its terminal end
    let mut uf = UnionFind((0..2 * letters.len()).collect());
    for f in &orbits {
        let k = f.arity();
        for j in 0..k {
            let incoming = edge_index[&f.0[(j + k - 1) % k]];
            let outgoing = edge_index[&f.0[j]];
            uf.union(2 * incoming + 1, 2 * outgoing);
        }
    }
    let mut vertex_of_root = BTreeMap::new();
    for end in 0..2 * letters.len() {
        let root = uf.find(end);
        let next = vertex_of_root.len();
        vertex_of_root.entry(root).or_insert(next);
    }
    let edges = letters
        .iter()
        .enumerate()
        .map(|(i, &letter)| OrientedEdge {
            letter,
            tail: vertex_of_root[&uf.find(2 * i)],
            head: vertex_of_root[&uf.find(2 * i + 1)],
        })
        .collect();
    let faces = orbits
        .into_iter()
        .map(|word| {
            let sides = word.0.iter().map(|l| edge_index[l]).collect();
            Face { word, sides }
        })
        .collect();
    Ok(Polyhedron { k: p.k, vertex_count: vertex_of_root.len(), edges, faces })
}

impl Polyhedron {
    pub fn corners(&self) -> Vec<Corner> {
        let mut out = Vec::with_capacity(self.k * self.faces.len());
        for (fi, f) in self.faces.iter().enumerate() {
            let k = f.word.arity();
            for j in 0..k {
                out.push(Corner { face: fi, position: j, incoming: f.word.0[(j + k - 1) % k], outgoing: f.word.0[j] });
            }
        }
        out
    }

    fn edge_by_letter(&self, l: Letter) -> &OrientedEdge {
        self.edges.iter().find(|e| e.letter == l).expect("every face letter names an edge")
    }

    /// Text dump: header, vertex count, one `edge <letter> <tail> <head>` per
    /// edge, one `face <id> <letters..>` per face.
    pub fn to_text(&self) -> String {
        let mut out = format!("polyhedron k={}\nvertices {}\n", self.k, self.vertex_count);
        for e in &self.edges {
            writeln!(out, "edge {} {} {}", e.letter.0, e.tail, e.head).unwrap();
        }
        for (i, f) in self.faces.iter().enumerate() {
            let word: Vec<String> = f.word.0.iter().map(|l| l.0.to_string()).collect();
            writeln!(out, "face {i} {}", word.join(" ")).unwrap();
        }
        out
    }
}

/// Link graph from edge-ends and corners at one vertex.
///
/// Black vertices are the initial ends `x_l` (sorted by letter), then white
/// vertices the terminal ends `y_l`. Each corner `(incoming a, outgoing b)`
/// gives the edge `{y_a, x_b}`.
pub fn link_from_corners(
    initial_ends: &[Letter],
    terminal_ends: &[Letter],
    corners: impl IntoIterator<Item = (Letter, Letter)>,
) -> Result<LabeledGraph> {
    let mut black: Vec<Letter> = initial_ends.to_vec();
    let mut white: Vec<Letter> = terminal_ends.to_vec();
    black.sort();
    white.sort();
    let mut vertices: Vec<Vertex> =
        black.iter().map(|l| Vertex { color: Some(Color::Black), label: format!("x{}", l.0) }).collect();
    vertices.extend(white.iter().map(|l| Vertex { color: Some(Color::White), label: format!("y{}", l.0) }));
    let mut edges = Vec::new();
    for (a, b) in corners {
        let w = white.binary_search(&a).map_err(|_| Error::InvalidGraph(format!("corner uses missing end y{}", a.0)))?;
        let x = black.binary_search(&b).map_err(|_| Error::InvalidGraph(format!("corner uses missing end x{}", b.0)))?;
        edges.push((black.len() + w, x));
    }
    LabeledGraph::new_bipartite(vertices, edges)
}

/// One link per vertex of the polyhedron, in vertex order.
pub fn vertex_links(poly: &Polyhedron) -> Result<Vec<LabeledGraph>> {
    let corners = poly.corners();
    (0..poly.vertex_count)
        .map(|v| {
            let initial: Vec<Letter> = poly.edges.iter().filter(|e| e.tail == v).map(|e| e.letter).collect();
            let terminal: Vec<Letter> = poly.edges.iter().filter(|e| e.head == v).map(|e| e.letter).collect();
            let here = corners
                .iter()
                .filter(|c| poly.edge_by_letter(c.outgoing).tail == v)
                .map(|c| (c.incoming, c.outgoing));
            link_from_corners(&initial, &terminal, here)
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSize {
    /// link vertices
    pub s: usize,
    /// link edges
    pub t: usize,
}

/// The cell-count formulas of the form "n vertices, k·Σs edges, Σt faces",
/// set beside the counted values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaComparison {
    pub formula_vertices: usize,
    pub formula_edges: usize,
    pub formula_faces: usize,
    pub vertices_agree: bool,
    pub edges_agree: bool,
    pub faces_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellCensus {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_characteristic: i64,
    pub links: Vec<LinkSize>,
    pub formulas: FormulaComparison,
}

pub fn cell_census(poly: &Polyhedron) -> Result<CellCensus> {
    let links: Vec<LinkSize> =
        vertex_links(poly)?.iter().map(|g| LinkSize { s: g.order(), t: g.size() }).collect();
    let (v, e, f) = (poly.vertex_count, poly.edges.len(), poly.faces.len());
    let formula_edges = poly.k * links.iter().map(|l| l.s).sum::<usize>();
    let formula_faces = links.iter().map(|l| l.t).sum::<usize>();
    Ok(CellCensus {
        vertices: v,
        edges: e,
        faces: f,
        euler_characteristic: v as i64 - e as i64 + f as i64,
        formulas: FormulaComparison {
            formula_vertices: links.len(),
            formula_edges,
            formula_faces,
            vertices_agree: links.len() == v,
            edges_agree: formula_edges == e,
            faces_agree: formula_faces == f,
        },
        links,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MnInequality {
    pub m: usize,
    pub n: usize,
    pub product: usize,
    pub bound: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub p_sides: usize,
    pub m_angle: usize,
    pub link_girths: Vec<Extent>,
    /// `2 * m_angle`: a link cycle of this many corners of angle π/m_angle
    /// has angular length exactly 2π.
    pub required_girth: usize,
    pub link_condition: bool,
    /// `m_angle * p_sides`
    pub angle_product: usize,
    /// `2 * m_angle + p_sides`
    pub angle_bound: usize,
    pub hyperbolic: bool,
    pub euclidean_boundary: bool,
    /// `m n >= 2 (m + n)` with `m` the least link girth and `n = p_sides`.
    pub mn_inequality: Option<MnInequality>,
}

/// Integer curvature checks for corner angles π/`m_angle` on `p_sides`-gons.
pub fn check_link_condition(poly: &Polyhedron, p_sides: usize, m_angle: usize) -> Result<CurvatureReport> {
    if let Some(f) = poly.faces.iter().find(|f| f.word.arity() != p_sides) {
        return Err(Error::MixedArity(p_sides, f.word.arity()));
    }
    if m_angle == 0 {
        return Err(Error::Unsupported("corner angle π/0".into()));
    }
    let link_girths: Vec<Extent> = vertex_links(poly)?.iter().map(incidence::girth).collect();
    let required_girth = 2 * m_angle;
    let link_condition = link_girths.iter().all(|g| match g {
        Extent::Finite(n) => *n >= required_girth,
        Extent::Infinite => true,
    });
    let angle_product = m_angle * p_sides;
    let angle_bound = 2 * m_angle + p_sides;
    let mn_inequality = link_girths.iter().filter_map(|g| g.finite()).min().map(|m| MnInequality {
        m,
        n: p_sides,
        product: m * p_sides,
        bound: 2 * (m + p_sides),
        holds: m * p_sides >= 2 * (m + p_sides),
    });
    Ok(CurvatureReport {
        p_sides,
        m_angle,
        link_girths,
        required_girth,
        link_condition,
        angle_product,
        angle_bound,
        hyperbolic: angle_product > angle_bound,
        euclidean_boundary: angle_product == angle_bound,
        mn_inequality,
    })
}
