use std::collections::BTreeSet;

use gonforge::complex::{build_polyhedron, vertex_links};
use gonforge::incidence::build_doily;
use gonforge::presentation::{builtin, derive_basic_bijection, reconstruct_link_graph, validate_with_gonality};
use gonforge::search::{
    arc_digraph_from, build_arc_digraph, dedupe_up_to_equivalence, enumerate_triangle_presentations, ArcDigraph,
    SearchOptions,
};
use gonforge::symmetry::find_isomorphism;

#[test]
fn every_solution_is_an_exact_cover() {
    let doily = build_doily();
    for name in ["T1", "T2"] {
        let d = arc_digraph_from(&builtin(name).unwrap(), &doily).unwrap();
        let out = enumerate_triangle_presentations(&d, &SearchOptions::default()).unwrap();
        let arcs: BTreeSet<(u32, u32)> = d.arcs.iter().copied().collect();
        for p in &out.presentations {
            let closed = p.closed_tuples();
            assert_eq!(closed.len(), 45);
            let pairs: BTreeSet<(u32, u32)> = closed.iter().map(|t| (t.0[0].0, t.0[1].0)).collect();
            assert_eq!(pairs, arcs);
            assert!(validate_with_gonality(p, 4).passed);
            let poly = build_polyhedron(p).unwrap();
            let corner = &vertex_links(&poly).unwrap()[0];
            assert!(find_isomorphism(corner, &reconstruct_link_graph(p).unwrap(), true).unwrap().is_some());
        }
    }
}

#[test]
fn restarts_are_byte_identical() {
    let doily = build_doily();
    let d = arc_digraph_from(&builtin("T1").unwrap(), &doily).unwrap();
    let text = |opts: &SearchOptions| {
        enumerate_triangle_presentations(&d, opts)
            .unwrap()
            .presentations
            .iter()
            .map(|p| p.to_text())
            .collect::<String>()
    };
    let serial = text(&SearchOptions::default());
    assert_eq!(serial, text(&SearchOptions::default()));
    assert_eq!(serial, text(&SearchOptions { parallel: true, ..Default::default() }));
}

#[test]
fn each_lambda_has_exactly_one_solution() {
    let doily = build_doily();
    let mut all = Vec::new();
    for name in ["T1", "T2"] {
        let p = builtin(name).unwrap();
        let out = enumerate_triangle_presentations(&arc_digraph_from(&p, &doily).unwrap(), &SearchOptions::default())
            .unwrap();
        assert_eq!(out.presentations.len(), 1, "{name}");
        assert_eq!(out.presentations[0].closed_tuples(), p.closed_tuples());
        all.extend(out.presentations);
    }
    let catalog = dedupe_up_to_equivalence(&all).unwrap();
    assert_eq!(catalog.class_count(), 2);
}

#[test]
fn arc_digraph_follows_lambda() {
    let doily = build_doily();
    let p = builtin("T2").unwrap();
    let lambda = derive_basic_bijection(&p, &doily).unwrap();
    let d = build_arc_digraph(&doily, &lambda);
    for &(a, b) in &d.arcs {
        assert!(doily.line_points[lambda.line_of(a as usize)].contains(&(b as usize)));
    }
    assert_eq!(d.arcs.len(), 45);
    assert!(d.triangles().iter().any(|t| t.0.iter().map(|l| l.0).collect::<Vec<_>>() == [1, 1, 10]));
}

#[test]
fn degenerate_cycles_cover_loops() {
    let d = ArcDigraph::from_arcs(2, [(1, 1), (1, 2), (2, 1)]);
    let out = enumerate_triangle_presentations(&d, &SearchOptions::default()).unwrap();
    assert_eq!(out.presentations.len(), 1);
    assert_eq!(out.presentations[0].tuples[0].to_string(), "(1,1,2)");
}
