//! The generalized quadrangle of order (2,2) in its duad/syntheme model.
//!
//! Points are the 15 two-element subsets of `{1,..,6}`, numbered 1..15 in
//! lexicographic order. Lines are the 15 partitions of `{1,..,6}` into three
//! pairs. A point lies on a line when the pair is one of its three blocks.

use super::graph::{Color, LabeledGraph, Vertex};

pub type Duad = (u8, u8);
pub type Syntheme = [Duad; 3];

#[derive(Clone, Debug)]
pub struct Doily {
    /// Incidence graph: vertices `0..15` are points (black, labeled `1..15`),
    /// vertices `15..30` are lines (white, labeled `L1..L15`).
    pub graph: LabeledGraph,
    pub points: Vec<Duad>,
    pub lines: Vec<Syntheme>,
    /// Point numbers (1-based) on each line, sorted.
    pub line_points: Vec<[usize; 3]>,
}

pub const POINTS: usize = 15;

impl Doily {
    /// 1-based point number of a duad.
    pub fn point_number(&self, duad: Duad) -> Option<usize> {
        let d = (duad.0.min(duad.1), duad.0.max(duad.1));
        self.points.iter().position(|&p| p == d).map(|i| i + 1)
    }

    /// Index (0-based) of the line whose point set is exactly `pts`.
    pub fn line_with_points(&self, pts: &[usize]) -> Option<usize> {
        let mut sorted = pts.to_vec();
        sorted.sort_unstable();
        self.line_points.iter().position(|l| l[..] == sorted[..])
    }

    pub fn point_vertex(&self, point: usize) -> usize {
        point - 1
    }

    pub fn line_vertex(&self, line: usize) -> usize {
        POINTS + line
    }

    /// Lines through a point, as 0-based line indices.
    pub fn lines_through(&self, point: usize) -> Vec<usize> {
        (0..self.line_points.len()).filter(|&l| self.line_points[l].contains(&point)).collect()
    }
}

pub fn build_doily() -> Doily {
    let mut points = Vec::with_capacity(POINTS);
    for i in 1..=6u8 {
        for j in i + 1..=6 {
            points.push((i, j));
        }
    }

    // Partitions of {1..6} into pairs: 1 pairs with a, the smallest remaining
    // element pairs with b, the last two form the third block.
    let mut lines = Vec::with_capacity(POINTS);
    for a in 2..=6u8 {
        let rest: Vec<u8> = (2..=6).filter(|&x| x != a).collect();
        let first = rest[0];
        for &b in &rest[1..] {
            let last: Vec<u8> = rest.iter().copied().filter(|&x| x != first && x != b).collect();
            lines.push([(1, a), (first, b), (last[0], last[1])]);
        }
    }

    let number = |d: Duad| points.iter().position(|&p| p == d).unwrap() + 1;
    let line_points: Vec<[usize; 3]> = lines
        .iter()
        .map(|l| {
            let mut pts = [number(l[0]), number(l[1]), number(l[2])];
            pts.sort_unstable();
            pts
        })
        .collect();

    let mut vertices = Vec::with_capacity(2 * POINTS);
    for p in 1..=POINTS {
        vertices.push(Vertex { color: Some(Color::Black), label: p.to_string() });
    }
    for l in 1..=POINTS {
        vertices.push(Vertex { color: Some(Color::White), label: format!("L{l}") });
    }
    let mut edges = Vec::with_capacity(45);
    for (l, pts) in line_points.iter().enumerate() {
        for &p in pts {
            edges.push((p - 1, POINTS + l));
        }
    }
    let graph = LabeledGraph::new_bipartite(vertices, edges).expect("doily incidence graph is simple");
    Doily { graph, points, lines, line_points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::metrics::{bipartite_classes, diameter, girth, is_generalized_m_gon, Extent};

    #[test]
    fn natural_order_of_pairs() {
        let d = build_doily();
        let expected = [
            (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4), (2, 5),
            (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6),
        ];
        assert_eq!(d.points, expected);
        assert_eq!(d.point_number((6, 5)), Some(15));
    }

    #[test]
    fn lines_are_all_three_pair_partitions() {
        let d = build_doily();
        assert_eq!(d.lines.len(), 15);
        for l in &d.lines {
            let mut all: Vec<u8> = l.iter().flat_map(|&(a, b)| [a, b]).collect();
            all.sort_unstable();
            assert_eq!(all, vec![1, 2, 3, 4, 5, 6]);
        }
        let mut keys: Vec<_> = d.line_points.clone();
        keys.sort_unstable();
        keys.dedup();
        assert_eq!(keys.len(), 15);
    }

    #[test]
    fn incidence_graph_parameters() {
        let d = build_doily();
        let g = &d.graph;
        assert_eq!(g.order(), 30);
        assert_eq!(g.size(), 45);
        assert!((0..30).all(|v| g.degree(v) == 3));
        let (black, white) = bipartite_classes(g).unwrap();
        assert_eq!(black, (0..15).collect::<Vec<_>>());
        assert_eq!(white, (15..30).collect::<Vec<_>>());
        assert_eq!(girth(g), Extent::Finite(8));
        assert_eq!(diameter(g), Extent::Finite(4));
        assert!(is_generalized_m_gon(g, 4).verdict);
    }

    #[test]
    fn each_point_on_three_lines() {
        let d = build_doily();
        for p in 1..=15 {
            assert_eq!(d.lines_through(p).len(), 3);
        }
    }
}
