//! Balls in the universal cover of a one-vertex polyhedron, grown by link
//! completion.
//!
//! Every vertex of the cover has exactly one outgoing and one incoming edge
//! per letter, and one face corner per closed tuple `(a, b, ..)` (incoming
//! `a`, outgoing `b`). Completing a vertex adds each missing corner's face,
//! first reusing every boundary vertex reachable along existing labeled edges
//! and only then creating new ones. Vertices at distance `< radius` from the
//! root are completed in breadth-first order; their links must come out
//! equal to the model link, and any contradiction met while gluing is a hard
//! error.

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_polyhedron, link_from_corners, vertex_links};
use crate::error::{Error, Result};
use crate::incidence::LabeledGraph;
use crate::presentation::{CyclicTuple, Letter, PolygonalPresentation};
use crate::symmetry::find_isomorphism;

pub const MAX_RADIUS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexStatus {
    Interior,
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DevVertex {
    pub distance: usize,
    pub status: VertexStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DevEdge {
    pub letter: Letter,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DevFace {
    /// Index into the polyhedron's face list (orbit representatives).
    pub orbit: usize,
    /// `corners[j]` is the vertex where side `j - 1` ends and side `j` starts,
    /// sides read along the orbit representative.
    pub corners: Vec<usize>,
    pub sides: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DevelopedComplex {
    pub radius: usize,
    pub vertices: Vec<DevVertex>,
    pub edges: Vec<DevEdge>,
    pub faces: Vec<DevFace>,
    /// Orbit representatives of the compact polyhedron's faces.
    pub orbit_words: Vec<CyclicTuple>,
    pub model_link: LabeledGraph,
    out_edge: HashMap<(usize, Letter), usize>,
    in_edge: HashMap<(usize, Letter), usize>,
    corner_face: HashMap<(usize, Letter, Letter), usize>,
}

/// The face through a corner of `v`, read from `v`: `walk[0] = v`,
/// side `j` runs `walk[j] -> walk[j + 1]` with letter `letters[j]`, and
/// `walk[k] = v`.
struct CornerPlan {
    tuple: usize,
    walk: Vec<Option<usize>>,
    letters: Vec<Letter>,
    unknown: usize,
}

impl DevelopedComplex {
    fn add_vertex(&mut self, distance: usize) -> usize {
        self.vertices.push(DevVertex { distance, status: VertexStatus::Boundary });
        self.vertices.len() - 1
    }

    fn ensure_edge(&mut self, tail: usize, letter: Letter, head: usize) -> Result<usize> {
        match (self.out_edge.get(&(tail, letter)), self.in_edge.get(&(head, letter))) {
            (Some(&e), Some(&f)) if e == f => Ok(e),
            (None, None) => {
                self.edges.push(DevEdge { letter, tail, head });
                let e = self.edges.len() - 1;
                self.out_edge.insert((tail, letter), e);
                self.in_edge.insert((head, letter), e);
                Ok(e)
            }
            _ => Err(Error::Frontier {
                vertex: tail,
                message: format!("edge {tail} -{}-> {head} conflicts with an existing edge", letter.0),
            }),
        }
    }

    fn plan(&self, v: usize, tuple: usize, t: &CyclicTuple) -> Result<CornerPlan> {
        let k = t.arity();
        // side j carries letter t[j + 1], the last side carries t[0]
        let letters: Vec<Letter> = (0..k).map(|j| t.0[(j + 1) % k]).collect();
        let mut walk = vec![None; k + 1];
        walk[0] = Some(v);
        walk[k] = Some(v);
        let mut forward = vec![None; k + 1];
        forward[0] = Some(v);
        for j in 0..k - 1 {
            let Some(x) = forward[j] else { break };
            forward[j + 1] = self.out_edge.get(&(x, letters[j])).map(|&e| self.edges[e].head);
        }
        let mut backward = vec![None; k + 1];
        backward[k] = Some(v);
        for j in (1..k).rev() {
            let Some(x) = backward[j + 1] else { break };
            backward[j] = self.in_edge.get(&(x, letters[j])).map(|&e| self.edges[e].tail);
        }
        for j in 1..k {
            walk[j] = match (forward[j], backward[j]) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Frontier {
                        vertex: v,
                        message: format!("corner {t} closes on two different vertices {a} and {b}"),
                    })
                }
                (a, b) => a.or(b),
            };
        }
        let unknown = walk.iter().filter(|w| w.is_none()).count();
        Ok(CornerPlan { tuple, walk, letters, unknown })
    }

    fn glue(&mut self, plan: CornerPlan, closed: &[CyclicTuple], orbit_of: &[(usize, usize)], dist: usize) -> Result<()> {
        let k = plan.letters.len();
        let mut walk = Vec::with_capacity(k + 1);
        for w in &plan.walk {
            walk.push(match w {
                Some(x) => *x,
                None => self.add_vertex(dist + 1),
            });
        }
        let mut sides = Vec::with_capacity(k);
        for j in 0..k {
            sides.push(self.ensure_edge(walk[j], plan.letters[j], walk[j + 1])?);
        }
        // re-index along the orbit representative
        let (orbit, shift) = orbit_of[plan.tuple];
        let t = &closed[plan.tuple];
        // walk[j] is where letter t[j] ends and t[j + 1] starts; in the
        // representative, t[j] sits at position (j + shift) mod k
        let mut corners = vec![0; k];
        let mut rep_sides = vec![0; k];
        for (j, (&w, &s)) in walk.iter().zip(&sides).enumerate() {
            let pos = (j + 1 + shift) % k;
            corners[pos] = w;
            rep_sides[pos] = s;
        }
        let face = self.faces.len();
        let word = &self.orbit_words[orbit];
        for j in 0..k {
            let incoming = word.0[(j + k - 1) % k];
            let outgoing = word.0[j];
            if self.corner_face.insert((corners[j], incoming, outgoing), face).is_some() {
                return Err(Error::Frontier {
                    vertex: corners[j],
                    message: format!("corner ({},{}) already filled while gluing {t}", incoming.0, outgoing.0),
                });
            }
        }
        debug_assert_eq!(&t.0[..], &word.rotated(shift).0[..]);
        self.faces.push(DevFace { orbit, corners, sides: rep_sides });
        Ok(())
    }

    fn complete(&mut self, v: usize, closed: &[CyclicTuple], orbit_of: &[(usize, usize)]) -> Result<()> {
        let dist = self.vertices[v].distance;
        loop {
            let mut best: Option<CornerPlan> = None;
            for (i, t) in closed.iter().enumerate() {
                if self.corner_face.contains_key(&(v, t.0[0], t.0[1])) {
                    continue;
                }
                let plan = self.plan(v, i, t)?;
                if best.as_ref().is_none_or(|b| plan.unknown < b.unknown) {
                    best = Some(plan);
                }
            }
            match best {
                Some(plan) => self.glue(plan, closed, orbit_of, dist)?,
                None => break,
            }
        }
        self.vertices[v].status = VertexStatus::Interior;
        let link = self.link_at(v)?;
        if link.labeled_edge_set() != self.model_link.labeled_edge_set() {
            return Err(Error::Frontier { vertex: v, message: "completed link differs from the model link".into() });
        }
        Ok(())
    }

    /// Link at `v` computed from incident edge ends and face corners.
    pub fn link_at(&self, v: usize) -> Result<LabeledGraph> {
        let mut initial = Vec::new();
        let mut terminal = Vec::new();
        for &(x, l) in self.out_edge.keys() {
            if x == v {
                initial.push(l);
            }
        }
        for &(x, l) in self.in_edge.keys() {
            if x == v {
                terminal.push(l);
            }
        }
        let mut corners: Vec<(Letter, Letter)> = self
            .corner_face
            .keys()
            .filter(|&&(x, _, _)| x == v)
            .map(|&(_, a, b)| (a, b))
            .collect();
        corners.sort();
        link_from_corners(&initial, &terminal, corners)
    }

    /// Drops one face and its corners (for perturbation checks).
    pub fn remove_face(&mut self, face: usize) {
        self.faces.remove(face);
        self.corner_face.clear();
        for (fi, f) in self.faces.iter().enumerate() {
            let word = &self.orbit_words[f.orbit];
            let k = word.arity();
            for j in 0..k {
                self.corner_face.insert((f.corners[j], word.0[(j + k - 1) % k], word.0[j]), fi);
            }
        }
    }

    /// Faces incident to each edge.
    pub fn edge_face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.edges.len()];
        for f in &self.faces {
            for &s in &f.sides {
                counts[s] += 1;
            }
        }
        counts
    }

    /// Text dump in the polyhedron format, with distances and status.
    pub fn to_text(&self) -> String {
        let mut out = format!("development radius={}\nvertices {}\n", self.radius, self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let status = match v.status {
                VertexStatus::Interior => "interior",
                VertexStatus::Boundary => "boundary",
            };
            writeln!(out, "vertex {i} distance={} {status}", v.distance).unwrap();
        }
        for e in &self.edges {
            writeln!(out, "edge {} {} {}", e.letter.0, e.tail, e.head).unwrap();
        }
        for (i, f) in self.faces.iter().enumerate() {
            let word: Vec<String> = self.orbit_words[f.orbit].0.iter().map(|l| l.0.to_string()).collect();
            let corners: Vec<String> = f.corners.iter().map(|c| c.to_string()).collect();
            writeln!(out, "face {i} {} at {}", word.join(" "), corners.join(" ")).unwrap();
        }
        out
    }
}

/// Develops the ball of the given radius around a root vertex.
pub fn develop_ball(p: &PolygonalPresentation, radius: usize) -> Result<DevelopedComplex> {
    if radius > MAX_RADIUS {
        return Err(Error::CapExceeded { what: "development radius", limit: MAX_RADIUS, got: radius });
    }
    if p.k != 3 {
        return Err(Error::Unsupported(format!("development of {}-gon complexes", p.k)));
    }
    let poly = build_polyhedron(p)?;
    if poly.vertex_count != 1 {
        return Err(Error::Unsupported(format!("development needs one vertex, polyhedron has {}", poly.vertex_count)));
    }
    let model_link = vertex_links(&poly)?.remove(0);
    let closed = p.closed_tuples();
    let orbit_words: Vec<CyclicTuple> = poly.faces.iter().map(|f| f.word.clone()).collect();
    let orbit_of: Vec<(usize, usize)> = closed
        .iter()
        .map(|t| {
            let rep = t.least_rotation();
            let orbit = orbit_words.iter().position(|w| *w == rep).expect("closed tuple lies in an orbit");
            let shift = (0..t.arity()).find(|&s| rep.rotated(s) == *t).unwrap();
            (orbit, shift)
        })
        .collect();

    let mut dev = DevelopedComplex {
        radius,
        vertices: vec![DevVertex { distance: 0, status: VertexStatus::Boundary }],
        edges: Vec::new(),
        faces: Vec::new(),
        orbit_words,
        model_link,
        out_edge: HashMap::new(),
        in_edge: HashMap::new(),
        corner_face: HashMap::new(),
    };
    for d in 0..radius {
        let layer: Vec<usize> = (0..dev.vertices.len()).filter(|&v| dev.vertices[v].distance == d).collect();
        for v in layer {
            dev.complete(v, &closed, &orbit_of)?;
        }
    }
    Ok(dev)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shell {
    pub distance: usize,
    pub vertices: usize,
    /// edges whose nearer endpoint is at this distance
    pub edges: usize,
    /// faces whose nearest corner is at this distance
    pub faces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallCensus {
    pub radius: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub interior_vertices: usize,
    pub boundary_vertices: usize,
    pub euler_characteristic: i64,
    pub shells: Vec<Shell>,
}

pub fn ball_census(d: &DevelopedComplex) -> BallCensus {
    let max_d = d.vertices.iter().map(|v| v.distance).max().unwrap_or(0);
    let mut shells: Vec<Shell> =
        (0..=max_d).map(|distance| Shell { distance, vertices: 0, edges: 0, faces: 0 }).collect();
    for v in &d.vertices {
        shells[v.distance].vertices += 1;
    }
    for e in &d.edges {
        shells[d.vertices[e.tail].distance.min(d.vertices[e.head].distance)].edges += 1;
    }
    for f in &d.faces {
        shells[f.corners.iter().map(|&c| d.vertices[c].distance).min().unwrap()].faces += 1;
    }
    let interior = d.vertices.iter().filter(|v| v.status == VertexStatus::Interior).count();
    BallCensus {
        radius: d.radius,
        vertices: d.vertices.len(),
        edges: d.edges.len(),
        faces: d.faces.len(),
        interior_vertices: interior,
        boundary_vertices: d.vertices.len() - interior,
        euler_characteristic: d.vertices.len() as i64 - d.edges.len() as i64 + d.faces.len() as i64,
        shells,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkVerdict {
    pub vertex: usize,
    pub distance: usize,
    pub link_vertices: usize,
    pub link_edges: usize,
    pub passed: bool,
}

/// For each interior vertex, recomputes the link from corners and checks it
/// is colored-isomorphic to the model link.
pub fn interior_link_check(d: &DevelopedComplex) -> Vec<LinkVerdict> {
    let interior: Vec<usize> =
        (0..d.vertices.len()).filter(|&v| d.vertices[v].status == VertexStatus::Interior).collect();
    interior
        .par_iter()
        .map(|&v| {
            let (passed, s, t) = match d.link_at(v) {
                Ok(link) => {
                    let iso = matches!(find_isomorphism(&link, &d.model_link, true), Ok(Some(_)));
                    (iso, link.order(), link.size())
                }
                Err(_) => (false, 0, 0),
            };
            LinkVerdict { vertex: v, distance: d.vertices[v].distance, link_vertices: s, link_edges: t, passed }
        })
        .collect()
}
