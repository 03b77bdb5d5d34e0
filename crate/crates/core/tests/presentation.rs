use std::collections::{BTreeSet, VecDeque};

use gonforge::acceptance::single_letter_mutations;
use gonforge::incidence::build_doily;
use gonforge::presentation::{
    builtin, derive_basic_bijection, parse_presentation, validate_against_model, validate_presentation,
    validate_with_gonality, PolygonalPresentation, T1_TEXT, T2_TEXT,
};

/// Independent check: 45 distinct leading pairs among the rotations, and the
/// graph `y_a - x_b` has girth 8 and diameter 4.
fn quadrangle_oracle(p: &PolygonalPresentation) -> bool {
    let q = p.q;
    let mut rotations = BTreeSet::new();
    for t in &p.tuples {
        let l: Vec<usize> = t.0.iter().map(|x| x.0 as usize).collect();
        for r in 0..l.len() {
            let mut v = l.clone();
            v.rotate_left(r);
            rotations.insert(v);
        }
    }
    let pairs: BTreeSet<(usize, usize)> = rotations.iter().map(|v| (v[0], v[1])).collect();
    if pairs.len() != rotations.len() {
        return false;
    }
    let n = 2 * q;
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in &pairs {
        adj[q + a - 1].push(b - 1);
        adj[b - 1].push(q + a - 1);
    }
    let mut girth = usize::MAX;
    let mut diam = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    girth = girth.min(dist[u] + dist[w] + 1);
                }
            }
        }
        if dist.contains(&usize::MAX) {
            return false;
        }
        diam = diam.max(*dist.iter().max().unwrap());
    }
    girth == 8 && diam == 4
}

#[test]
fn oracle_accepts_the_builtins() {
    assert!(quadrangle_oracle(&builtin("T1").unwrap()));
    assert!(quadrangle_oracle(&builtin("T2").unwrap()));
}

#[test]
fn every_single_letter_mutation_is_rejected() {
    for name in ["T1", "T2"] {
        let muts = single_letter_mutations(&builtin(name).unwrap());
        assert_eq!(muts.len(), 15 * 3 * 14);
        for m in &muts {
            let verdict = validate_with_gonality(m, 4).passed;
            assert_eq!(verdict, quadrangle_oracle(m), "{}", m.to_text());
            assert!(!verdict, "{}", m.to_text());
        }
    }
}

#[test]
fn mutation_caught_by_the_model_bijection() {
    let doily = build_doily();
    let t1 = builtin("T1").unwrap();
    let lambda = derive_basic_bijection(&t1, &doily).unwrap();
    let mut m = t1.clone();
    m.tuples[0] = gonforge::presentation::CyclicTuple::from_indices(&[1, 2, 8]);
    let verdict = validate_against_model(&m, &doily, &lambda);
    assert!(!verdict.passed);
    assert!(verdict.witnesses.iter().any(|w| w.contains("(2,8)")));
    assert!(validate_against_model(&t1, &doily, &lambda).passed);
}

#[test]
fn text_round_trip() {
    for text in [T1_TEXT, T2_TEXT] {
        let p = parse_presentation(text).unwrap();
        let back = parse_presentation(&p.to_text()).unwrap();
        assert_eq!(back, p);
        let closed = p.cyclic_closure();
        assert_eq!(parse_presentation(&closed.to_text()).unwrap().cyclic_closure(), closed);
    }
}

#[test]
fn both_builtins_use_the_natural_labeling() {
    let doily = build_doily();
    for name in ["T1", "T2"] {
        let p = builtin(name).unwrap();
        let lambda = derive_basic_bijection(&p, &doily).expect(name);
        let mut lines = lambda.lines.clone();
        lines.sort_unstable();
        assert_eq!(lines, (0..15).collect::<Vec<_>>());
        assert!(validate_against_model(&p, &doily, &lambda).passed);
    }
}

#[test]
fn duplicate_leading_pair_fails_condition_three() {
    let p = PolygonalPresentation::from_lists(3, &[&[1, 2, 3], &[1, 2, 4]]).unwrap();
    let r = validate_presentation(&p);
    assert!(!r.condition3.passed);
    assert!(!r.passed);
}
