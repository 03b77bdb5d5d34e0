use std::collections::{BTreeSet, HashMap};

use gonforge::develop::{ball_census, develop_ball, interior_link_check, VertexStatus};
use gonforge::incidence::is_generalized_m_gon;
use gonforge::presentation::{builtin, PolygonalPresentation};

type Word = Vec<i32>;

/// Length-two subwords of the triangle relators and their inverses, each
/// rewritten to the inverse of the remaining letter.
fn dehn_rules(p: &PolygonalPresentation) -> HashMap<(i32, i32), i32> {
    let mut rules = HashMap::new();
    for t in p.closed_tuples() {
        let w: Word = t.0.iter().map(|l| l.0 as i32).collect();
        let inv: Word = w.iter().rev().map(|x| -x).collect();
        for r in [w, inv] {
            for i in 0..3 {
                let key = (r[i], r[(i + 1) % 3]);
                let rep = -r[(i + 2) % 3];
                let e = rules.entry(key).or_insert(rep);
                *e = (*e).min(rep);
            }
        }
    }
    rules
}

fn reduce(w: &[i32], rules: &HashMap<(i32, i32), i32>) -> Word {
    let mut w = w.to_vec();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            if w[i] == -w[i + 1] {
                w.drain(i..i + 2);
                i = i.saturating_sub(1);
                changed = true;
            } else {
                i += 1;
            }
        }
        if let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| rules.contains_key(&(w[i], w[i + 1]))) {
            let rep = rules[&(w[i], w[i + 1])];
            w.splice(i..i + 2, [rep]);
            changed = true;
        }
        if !changed {
            return w;
        }
    }
}

struct WordBall {
    index: HashMap<Word, usize>,
    elems: Vec<Word>,
    dist: Vec<usize>,
    rules: HashMap<(i32, i32), i32>,
}

impl WordBall {
    fn equal(&self, a: &[i32], b: &[i32]) -> bool {
        let mut w: Word = a.iter().rev().map(|x| -x).collect();
        w.extend_from_slice(b);
        reduce(&w, &self.rules).is_empty()
    }

    /// Index of the element `w`, searched among distances `lo..=hi`.
    fn find(&self, w: &[i32], lo: usize, hi: usize) -> Option<usize> {
        if let Some(&i) = self.index.get(w) {
            return Some(i);
        }
        (0..self.elems.len()).find(|&i| self.dist[i] >= lo && self.dist[i] <= hi && self.equal(&self.elems[i], w))
    }

    fn new(p: &PolygonalPresentation, radius: usize) -> Self {
        let mut ball = WordBall { index: HashMap::from([(vec![], 0)]), elems: vec![vec![]], dist: vec![0], rules: dehn_rules(p) };
        let gens: Vec<i32> = (1..=p.q as i32).flat_map(|i| [i, -i]).collect();
        for r in 0..radius {
            let layer: Vec<usize> = (0..ball.elems.len()).filter(|&i| ball.dist[i] == r).collect();
            for g in layer {
                for &s in &gens {
                    let mut w = ball.elems[g].clone();
                    w.push(s);
                    let w = reduce(&w, &ball.rules);
                    if ball.find(&w, r.saturating_sub(1), r + 1).is_none() {
                        ball.index.insert(w.clone(), ball.elems.len());
                        ball.elems.push(w);
                        ball.dist.push(r + 1);
                    }
                }
            }
        }
        ball
    }

    /// (V, E, F): faces with a corner at distance `< radius`, and their
    /// edges.
    fn census(&self, p: &PolygonalPresentation, radius: usize) -> (usize, usize, usize) {
        let locate = |g: usize, word: &[i32]| {
            let mut w = self.elems[g].clone();
            w.extend_from_slice(word);
            let d = self.dist[g];
            self.find(&reduce(&w, &self.rules), d.saturating_sub(word.len()), d + word.len())
        };
        let mut edges = BTreeSet::new();
        let mut faces = BTreeSet::new();
        for h in (0..self.elems.len()).filter(|&h| self.dist[h] < radius) {
            for t in p.closed_tuples() {
                let (a, b, c) = (t.0[0].0 as i32, t.0[1].0 as i32, t.0[2].0 as i32);
                let x = locate(h, &[b]).expect("neighbours lie in the ball");
                let y = locate(h, &[b, c]).expect("face corners lie in the ball");
                let mut key = [h, x, y];
                key.sort_unstable();
                faces.insert((t.least_rotation(), key));
                edges.extend([(h, b), (x, c), (y, a)]);
            }
        }
        (self.elems.len(), edges.len(), faces.len())
    }
}

#[test]
fn radius_two_matches_the_word_ball() {
    for name in ["T1", "T2"] {
        let p = builtin(name).unwrap();
        let oracle = WordBall::new(&p, 2);
        let shells: Vec<usize> = (0..=2).map(|r| oracle.dist.iter().filter(|&&d| d == r).count()).collect();
        let c = ball_census(&develop_ball(&p, 2).unwrap());
        let dev_shells: Vec<usize> = c.shells.iter().map(|s| s.vertices).collect();
        assert_eq!(dev_shells, shells, "{name}");
        assert_eq!((c.vertices, c.edges, c.faces), oracle.census(&p, 2), "{name}");
    }
}

#[test]
fn radius_one_matches_the_word_ball() {
    let p = builtin("T1").unwrap();
    let oracle = WordBall::new(&p, 1);
    assert_eq!(oracle.census(&p, 1), (31, 75, 45));
}

#[test]
fn interior_edges_have_thickness_three() {
    let d = develop_ball(&builtin("T1").unwrap(), 2).unwrap();
    let counts = d.edge_face_counts();
    for (e, edge) in d.edges.iter().enumerate() {
        let interior = [edge.tail, edge.head].iter().any(|&v| d.vertices[v].status == VertexStatus::Interior);
        if interior {
            assert_eq!(counts[e], 3, "edge {e}");
        } else {
            assert_eq!(counts[e], 1, "edge {e}");
        }
    }
}

#[test]
fn interior_links_are_generalized_quadrangles() {
    let d = develop_ball(&builtin("T2").unwrap(), 2).unwrap();
    let verdicts = interior_link_check(&d);
    assert_eq!(verdicts.len(), 31);
    for v in verdicts {
        assert!(v.passed);
        assert!(is_generalized_m_gon(&d.link_at(v.vertex).unwrap(), 4).verdict);
    }
}

#[test]
fn balls_are_contractible_and_deterministic() {
    let p = builtin("T1").unwrap();
    for r in 0..=2 {
        let a = develop_ball(&p, r).unwrap();
        let b = develop_ball(&p, r).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(ball_census(&a).euler_characteristic, 1);
    }
}

#[test]
fn vertices_are_distinct_words() {
    let p = builtin("T1").unwrap();
    let oracle = WordBall::new(&p, 2);
    let reduced: BTreeSet<Word> = oracle.elems.iter().cloned().collect();
    assert_eq!(reduced.len(), oracle.elems.len());
}
