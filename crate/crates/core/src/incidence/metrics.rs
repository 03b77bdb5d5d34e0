use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::{Color, LabeledGraph};

/// A length that may be unbounded (girth of a forest, diameter of a
/// disconnected graph).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extent {
    Finite(usize),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extent::Finite(n) => Some(n),
            Extent::Infinite => None,
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(n) => write!(f, "{n}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

/// Breadth-first distances from `source`; `usize::MAX` marks unreachable.
pub fn bfs_distances(g: &LabeledGraph, source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs distance matrix by repeated BFS.
pub fn distance_matrix(g: &LabeledGraph) -> Vec<Vec<usize>> {
    (0..g.order()).map(|v| bfs_distances(g, v)).collect()
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for s in 0..g.order() {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &LabeledGraph) -> bool {
    g.order() <= 1 || components(g).len() == 1
}

/// Two-coloring by breadth-first layering.
///
/// Each component's root takes its stored color when it has one, so the
/// result agrees with a consistent stored coloring. Returns `None` when an odd
/// cycle exists. The first class holds the black (or root-layer) vertices.
pub fn bipartite_classes(g: &LabeledGraph) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut side: Vec<Option<Color>> = vec![None; g.order()];
    for root in 0..g.order() {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(g.color(root).unwrap_or(Color::Black));
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let here = side[v].unwrap();
            for &w in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(here.flip());
                        queue.push_back(w);
                    }
                    Some(c) if c == here => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let mut black = Vec::new();
    let mut white = Vec::new();
    for (v, s) in side.into_iter().enumerate() {
        match s.unwrap() {
            Color::Black => black.push(v),
            Color::White => white.push(v),
        }
    }
    Some((black, white))
}

/// Length of a shortest cycle.
///
/// From every root, a BFS tree is grown; a non-tree edge `(v, w)` closes a
/// closed walk of length `d(v) + d(w) + 1` through the root, and the minimum
/// over all roots is attained by a genuine shortest cycle.
pub fn girth(g: &LabeledGraph) -> Extent {
    let n = g.order();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        queue.clear();
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.push_back(root);
        'bfs: while let Some(v) = queue.pop_front() {
            // nothing shorter can be found past this layer
            if 2 * dist[v] >= best {
                break;
            }
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    best = best.min(dist[v] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
    }
    if best == usize::MAX {
        Extent::Infinite
    } else {
        Extent::Finite(best)
    }
}

/// Largest shortest-path distance; infinite if the graph is disconnected.
pub fn diameter(g: &LabeledGraph) -> Extent {
    let mut best = 0;
    for v in 0..g.order() {
        for d in bfs_distances(g, v) {
            if d == usize::MAX {
                return Extent::Infinite;
            }
            best = best.max(d);
        }
    }
    Extent::Finite(best)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedPolygonReport {
    pub m: usize,
    pub is_connected: bool,
    pub is_bipartite: bool,
    pub diameter: Extent,
    pub girth: Extent,
    pub min_degree: usize,
    pub verdict: bool,
}

/// Checks the defining parameters of a generalized m-gon: connected,
/// bipartite, diameter `m`, girth `2m`, every vertex on at least two edges.
pub fn is_generalized_m_gon(g: &LabeledGraph, m: usize) -> GeneralizedPolygonReport {
    let is_connected = is_connected(g);
    let is_bipartite = bipartite_classes(g).is_some();
    let diameter = diameter(g);
    let girth = girth(g);
    let min_degree = (0..g.order()).map(|v| g.degree(v)).min().unwrap_or(0);
    let verdict = g.order() > 0
        && is_connected
        && is_bipartite
        && diameter == Extent::Finite(m)
        && girth == Extent::Finite(2 * m)
        && min_degree >= 2;
    GeneralizedPolygonReport { m, is_connected, is_bipartite, diameter, girth, min_degree, verdict }
}
