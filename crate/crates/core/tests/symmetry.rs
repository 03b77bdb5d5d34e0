use gonforge::incidence::{build_doily, LabeledGraph};
use gonforge::presentation::{builtin, reconstruct_link_graph};
use gonforge::symmetry::{
    canonical_form, enumerate_automorphisms, enumerate_isomorphisms, find_isomorphism, link_symmetries,
    presentations_equivalent, verify_isomorphism, GraphMap,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Brute-force automorphism count over all vertex permutations.
fn brute_force_automorphisms(g: &LabeledGraph) -> usize {
    fn rec(g: &LabeledGraph, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
        let v = map.len();
        if v == g.order() {
            *count += 1;
            return;
        }
        for w in 0..g.order() {
            if used[w] {
                continue;
            }
            if (0..v).all(|u| g.has_edge(u, v) == g.has_edge(map[u], w)) {
                used[w] = true;
                map.push(w);
                rec(g, map, used, count);
                map.pop();
                used[w] = false;
            }
        }
    }
    let mut count = 0;
    rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut count);
    count
}

#[test]
fn small_graph_groups_match_brute_force() {
    let graphs = [
        LabeledGraph::cycle(6),
        LabeledGraph::plain(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
        LabeledGraph::plain(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap(),
        LabeledGraph::plain(6, &[(0, 1), (1, 2), (3, 4)]).unwrap(),
    ];
    for g in &graphs {
        assert_eq!(enumerate_automorphisms(g, false).unwrap().order, brute_force_automorphisms(g));
    }
}

#[test]
fn doily_groups() {
    let g = build_doily().graph;
    let colored = enumerate_automorphisms(&g, true).unwrap();
    assert_eq!(colored.order, 720);
    assert_eq!(enumerate_automorphisms(&g, false).unwrap().order, 1440);
    for f in &colored.elements {
        assert!(verify_isomorphism(&g, &g, f, true));
    }
    assert!(colored.elements.contains(&GraphMap::identity(30, true)));
}

#[test]
fn links_are_doily_copies() {
    let doily = build_doily().graph;
    for name in ["T1", "T2"] {
        let link = reconstruct_link_graph(&builtin(name).unwrap()).unwrap();
        let f = find_isomorphism(&link, &doily, true).unwrap().unwrap();
        assert!(verify_isomorphism(&link, &doily, &f, true));
        assert_eq!(enumerate_isomorphisms(&link, &doily, true).unwrap().len(), 720);
    }
}

#[test]
fn relabeled_copies_are_recognised() {
    let t1 = builtin("T1").unwrap();
    let perms = link_symmetries(&t1).unwrap();
    assert_eq!(perms.len(), 720);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for perm in perms.choose_multiple(&mut rng, 5) {
        let moved = t1.relabeled(perm);
        let r = presentations_equivalent(&t1, &moved).unwrap();
        let witness = r.orientation_preserving.witness.expect("witness");
        assert_eq!(t1.cyclic_closure().relabeled(&witness).tuples, moved.closed_tuples());
        assert_eq!(canonical_form(&moved).unwrap(), canonical_form(&t1).unwrap());
    }
}

#[test]
fn builtins_are_inequivalent_both_ways() {
    let (t1, t2) = (builtin("T1").unwrap(), builtin("T2").unwrap());
    let r = presentations_equivalent(&t1, &t2).unwrap();
    assert!(r.links_isomorphic);
    assert!(!r.orientation_preserving.equivalent);
    assert!(!r.with_reversal.equivalent);
    assert_ne!(canonical_form(&t1).unwrap(), canonical_form(&t2).unwrap());
}
