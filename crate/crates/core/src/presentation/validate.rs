use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{CyclicTuple, Letter, PolygonalPresentation};
use crate::error::{Error, Result};
use crate::incidence::{self, Color, Doily, Extent, GeneralizedPolygonReport, LabeledGraph, Vertex};
use crate::symmetry;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl ConditionVerdict {
    fn from_witnesses(witnesses: Vec<String>) -> Self {
        ConditionVerdict { passed: witnesses.is_empty(), witnesses }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkStats {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub girth: Extent,
    pub diameter: Extent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub q: usize,
    pub k: usize,
    pub n: usize,
    pub listed_tuples: usize,
    pub closed_tuples: usize,
    pub condition1: ConditionVerdict,
    pub condition3: ConditionVerdict,
    pub condition2: ConditionVerdict,
    pub link: Option<LinkStats>,
    /// Per-component generalized polygon reports, when a gonality was requested.
    pub polygon: Vec<GeneralizedPolygonReport>,
    /// Colored-isomorphism comparison against a supplied graph, if any.
    pub supplied_graph_isomorphic: Option<bool>,
    pub passed: bool,
}

/// Checks conditions (1)-(3) on the rotation closure of `p`, reconstructing
/// the link graph from leading pairs.
pub fn validate_presentation(p: &PolygonalPresentation) -> ValidationReport {
    let closed = p.cyclic_closure();

    // (1) holds for the closure by construction; re-check it on the set.
    let set: BTreeSet<&CyclicTuple> = closed.tuples.iter().collect();
    let condition1 = ConditionVerdict::from_witnesses(
        closed
            .tuples
            .iter()
            .filter(|t| !set.contains(&t.rotated(1)))
            .map(|t| format!("rotation of {t} missing"))
            .collect(),
    );

    // (3) every ordered leading pair starts at most one tuple
    let mut by_pair: BTreeMap<(Letter, Letter), Vec<&CyclicTuple>> = BTreeMap::new();
    for t in &closed.tuples {
        by_pair.entry(t.leading_pair()).or_default().push(t);
    }
    let condition3 = ConditionVerdict::from_witnesses(
        by_pair
            .iter()
            .filter(|(_, ts)| ts.len() > 1)
            .map(|((a, b), ts)| {
                let list: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                format!("pair ({},{}) extends to {}", a.0, b.0, list.join(" and "))
            })
            .collect(),
    );

    let mut report = ValidationReport {
        q: p.q,
        k: p.k,
        n: p.n,
        listed_tuples: p.tuples.len(),
        closed_tuples: closed.tuples.len(),
        condition1,
        condition3,
        condition2: ConditionVerdict::default(),
        link: None,
        polygon: Vec::new(),
        supplied_graph_isomorphic: None,
        passed: false,
    };
    if !report.condition3.passed {
        report.condition2.witnesses.push("not checked: condition (3) fails".into());
        return report;
    }

    let graph = reconstruct_link_graph(&closed).expect("condition (3) holds");
    report.condition2 = check_condition2(&closed, &graph);
    report.link = Some(link_stats(&graph));
    report.passed = report.condition1.passed && report.condition2.passed && report.condition3.passed;
    report
}

/// [`validate_presentation`] plus a generalized m-gon check of every link
/// component.
pub fn validate_with_gonality(p: &PolygonalPresentation, m: usize) -> ValidationReport {
    let mut report = validate_presentation(p);
    if report.condition3.passed {
        let graph = reconstruct_link_graph(&p.cyclic_closure()).expect("condition (3) holds");
        report.polygon = component_graphs(&graph).iter().map(|c| incidence::is_generalized_m_gon(c, m)).collect();
        report.passed &= report.polygon.iter().all(|r| r.verdict);
    }
    report
}

/// [`validate_presentation`] plus a colored-isomorphism comparison of the
/// reconstructed link with a supplied graph.
pub fn validate_with_graph(p: &PolygonalPresentation, supplied: &LabeledGraph) -> Result<ValidationReport> {
    let mut report = validate_presentation(p);
    if report.condition3.passed {
        let graph = reconstruct_link_graph(&p.cyclic_closure())?;
        let iso = symmetry::find_isomorphism(&graph, supplied, true)?.is_some();
        report.supplied_graph_isomorphic = Some(iso);
        report.passed &= iso;
    }
    Ok(report)
}

/// Condition (2) against the doily with a given basic bijection: a tuple
/// starting `(a, b)` exists iff point `b` lies on line `lambda(a)`.
pub fn validate_against_model(p: &PolygonalPresentation, doily: &Doily, lambda: &BasicBijection) -> ConditionVerdict {
    let closed = p.closed_tuples();
    let pairs: BTreeSet<(usize, usize)> =
        closed.iter().map(|t| (t.leading_pair().0.index(), t.leading_pair().1.index())).collect();
    let mut witnesses = Vec::new();
    if p.q != doily.points.len() || lambda.lines.len() != p.q {
        witnesses.push(format!("alphabet size {} does not match the model", p.q));
        return ConditionVerdict::from_witnesses(witnesses);
    }
    for a in 1..=p.q {
        for b in 1..=p.q {
            let incident = doily.line_points[lambda.lines[a - 1]].contains(&b);
            let present = pairs.contains(&(a, b));
            if incident && !present {
                witnesses.push(format!("point {b} on lambda(x{a}) but no tuple starts ({a},{b})"));
            } else if present && !incident {
                witnesses.push(format!("tuple starts ({a},{b}) but point {b} is off lambda(x{a})"));
            }
        }
    }
    ConditionVerdict::from_witnesses(witnesses)
}

fn check_condition2(closed: &PolygonalPresentation, graph: &LabeledGraph) -> ConditionVerdict {
    let q = closed.q;
    let mut witnesses = Vec::new();
    let pairs: BTreeSet<(usize, usize)> =
        closed.tuples.iter().map(|t| (t.leading_pair().0.index(), t.leading_pair().1.index())).collect();
    // iff, re-derived from the graph side
    for &(u, v) in graph.edges() {
        let (white, black) = if graph.color(u) == Some(Color::White) { (u, v) } else { (v, u) };
        let a = white - q + 1;
        let b = black + 1;
        if !pairs.contains(&(a, b)) {
            witnesses.push(format!("edge y{a}-x{b} has no tuple starting ({a},{b})"));
        }
    }
    for &(a, b) in &pairs {
        if !graph.has_edge(q + a - 1, b - 1) {
            witnesses.push(format!("tuple starting ({a},{b}) has no edge y{a}-x{b}"));
        }
    }
    for l in 1..=q {
        if graph.degree(l - 1) == 0 && graph.degree(q + l - 1) == 0 {
            witnesses.push(format!("letter x{l} occurs in no tuple"));
        }
    }
    let comps = incidence::components(graph);
    if comps.len() != closed.n {
        witnesses.push(format!("link has {} connected components, expected n={}", comps.len(), closed.n));
    }
    ConditionVerdict::from_witnesses(witnesses)
}

fn link_stats(graph: &LabeledGraph) -> LinkStats {
    let degrees: Vec<usize> = (0..graph.order()).map(|v| graph.degree(v)).collect();
    LinkStats {
        vertices: graph.order(),
        edges: graph.size(),
        components: incidence::components(graph).len(),
        min_degree: degrees.iter().copied().min().unwrap_or(0),
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        girth: incidence::girth(graph),
        diameter: incidence::diameter(graph),
    }
}

/// Induced subgraphs on the connected components.
pub(crate) fn component_graphs(g: &LabeledGraph) -> Vec<LabeledGraph> {
    incidence::components(g)
        .into_iter()
        .map(|comp| {
            let mut index = vec![usize::MAX; g.order()];
            for (i, &v) in comp.iter().enumerate() {
                index[v] = i;
            }
            let vertices = comp.iter().map(|&v| g.vertex(v).clone()).collect();
            let edges = g
                .edges()
                .iter()
                .filter(|&&(a, _)| index[a] != usize::MAX)
                .map(|&(a, b)| (index[a], index[b]))
                .collect();
            LabeledGraph::new_bipartite(vertices, edges).expect("subgraph of a bipartite graph")
        })
        .collect()
}

/// The link forced by condition (2): black `x_1..x_q` (vertices `0..q`),
/// white `y_1..y_q` (vertices `q..2q`), and an edge `{y_a, x_b}` for every
/// closed tuple starting `(a, b)`.
pub fn reconstruct_link_graph(p: &PolygonalPresentation) -> Result<LabeledGraph> {
    let q = p.q;
    let mut vertices: Vec<Vertex> =
        (1..=q).map(|i| Vertex { color: Some(Color::Black), label: format!("x{i}") }).collect();
    vertices.extend((1..=q).map(|i| Vertex { color: Some(Color::White), label: format!("y{i}") }));
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    for t in p.closed_tuples() {
        let (a, b) = t.leading_pair();
        if !seen.insert((a, b)) {
            return Err(Error::InvalidPresentation(format!(
                "leading pair ({},{}) extends to more than one tuple",
                a.0, b.0
            )));
        }
        edges.push((q + a.index() - 1, b.index() - 1));
    }
    LabeledGraph::new_bipartite(vertices, edges)
}

/// A basic bijection identified against the doily: letter `x_a` is point `a`
/// and `lines[a - 1]` is the doily line index of `lambda(x_a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicBijection {
    pub lines: Vec<usize>,
}

impl BasicBijection {
    pub fn line_of(&self, letter: usize) -> usize {
        self.lines[letter - 1]
    }
}

/// Reads `lambda` off the out-neighbourhoods `{b : (a, b, ..) in K}`: each
/// must be the point set of a doily line under the lexicographic point
/// numbering. `None` if any is not, or if two letters hit the same line.
pub fn derive_basic_bijection(p: &PolygonalPresentation, doily: &Doily) -> Option<BasicBijection> {
    if p.q != doily.points.len() {
        return None;
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); p.q];
    for t in p.closed_tuples() {
        let (a, b) = t.leading_pair();
        out[a.index() - 1].push(b.index());
    }
    let mut lines = Vec::with_capacity(p.q);
    let mut used = vec![false; doily.line_points.len()];
    for nb in &out {
        let line = doily.line_with_points(nb)?;
        if nb.len() != 3 || std::mem::replace(&mut used[line], true) {
            return None;
        }
        lines.push(line);
    }
    Some(BasicBijection { lines })
}
